// Copyright 2026 The qcut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "qcut/analysis.hpp"
#include "qcut/circuit.hpp"
#include "qcut/errors.hpp"
#include "qcut/exact_solver.hpp"
#include "qcut/generator.hpp"
#include "qcut/graph.hpp"
#include "qcut/nelder_mead.hpp"
#include "qcut/pipeline.hpp"
#include "qcut/qaoa.hpp"
#include "qcut/rational.hpp"
#include "qcut/rng.hpp"
#include "qcut/separator.hpp"
#include "qcut/shrink.hpp"
#include "qcut/simulator.hpp"
#include "qcut/statevector.hpp"
#include "qcut/wirecut.hpp"
