// Copyright 2026 The qskc Authors
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

#ifndef QSKC_QSKC_HPP
#define QSKC_QSKC_HPP

#include "qskc/backend.hpp"
#include "qskc/bench.hpp"
#include "qskc/graph.hpp"
#include "qskc/serialize.hpp"
#include "qskc/simulate.hpp"
#include "qskc/states.hpp"
#include "qskc/subgraphs.hpp"
#include "qskc/transform.hpp"

#endif
