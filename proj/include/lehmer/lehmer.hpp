/*
   Copyright 2026 The lehmerlib Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/// Umbrella header.

#pragma once

#include "lehmer/bigint.hpp"
#include "lehmer/exactpoly.hpp"
#include "lehmer/finite_measure.hpp"
#include "lehmer/groups.hpp"
#include "lehmer/lehmer_search.hpp"
#include "lehmer/records.hpp"
#include "lehmer/torus_measure.hpp"
