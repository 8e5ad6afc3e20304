// SPDX-License-Identifier: Apache-2.0
//
// irspca: simulation of IRS-aided pilot contamination attacks and countermeasures
// Copyright (C) 2026 The irspca authors
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

#pragma once

#include "irspca/config.hpp"
#include "irspca/csv.hpp"
#include "irspca/detection.hpp"
#include "irspca/error.hpp"
#include "irspca/estimation.hpp"
#include "irspca/experiment.hpp"
#include "irspca/linalg.hpp"
#include "irspca/parallel.hpp"
#include "irspca/rng.hpp"
#include "irspca/scenario.hpp"
#include "irspca/special.hpp"
#include "irspca/transmission.hpp"
