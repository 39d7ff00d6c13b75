// SPDX-License-Identifier: Apache-2.0
//
// arisbf - sum-rate beamforming for active-RIS-aided multiuser MISO links
// Copyright (C) 2026 The arisbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ARISBF_ARISBF_HPP
#define ARISBF_ARISBF_HPP

// Everything except the experiment layer (which pulls in nlohmann/json).

#include "arisbf/types.hpp"
#include "arisbf/numerics.hpp"
#include "arisbf/hwi_model.hpp"
#include "arisbf/scenario.hpp"
#include "arisbf/config.hpp"
#include "arisbf/rate_model.hpp"
#include "arisbf/fp_core.hpp"
#include "arisbf/beamformer_solver.hpp"
#include "arisbf/reflection_solver.hpp"
#include "arisbf/orchestrator.hpp"
#include "arisbf/validation.hpp"

#endif
