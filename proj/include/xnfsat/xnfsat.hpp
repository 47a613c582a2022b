// Copyright (c) 2026 xnfsat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "xnfsat/activity.hpp"
#include "xnfsat/config_kv.hpp"
#include "xnfsat/crossbar.hpp"
#include "xnfsat/dimacs.hpp"
#include "xnfsat/energy.hpp"
#include "xnfsat/formula.hpp"
#include "xnfsat/instance_gen.hpp"
#include "xnfsat/metrics.hpp"
#include "xnfsat/results_io.hpp"
#include "xnfsat/rng.hpp"
#include "xnfsat/walksat.hpp"
#include "xnfsat/xor_transform.hpp"
