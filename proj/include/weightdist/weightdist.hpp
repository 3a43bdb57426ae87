/* Copyright 2026 The weightdist Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#pragma once

#include "weightdist/bigint.hpp"
#include "weightdist/charsum.hpp"
#include "weightdist/code.hpp"
#include "weightdist/counting.hpp"
#include "weightdist/error.hpp"
#include "weightdist/field.hpp"
#include "weightdist/number_theory.hpp"
#include "weightdist/parallel.hpp"
#include "weightdist/quadform.hpp"
#include "weightdist/report.hpp"
#include "weightdist/spectrum.hpp"
