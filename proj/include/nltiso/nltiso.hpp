/*
 * Copyright 2026 The nltiso Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#ifndef NLTISO_NLTISO_HPP
#define NLTISO_NLTISO_HPP

#include "adjacency.hpp"
#include "artifacts.hpp"
#include "baselines.hpp"
#include "error.hpp"
#include "estimator.hpp"
#include "graph.hpp"
#include "ingest.hpp"
#include "kernel.hpp"
#include "metrics.hpp"
#include "online.hpp"
#include "series.hpp"
#include "shrinkage.hpp"
#include "synthgen.hpp"
#include "trajectory.hpp"

#endif
