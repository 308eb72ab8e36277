// SPDX-License-Identifier: Apache-2.0
//
// risfp: RIS-assisted indoor RSS fingerprint database generator
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

#include "risfp/geometry.hpp"
#include "risfp/radiation.hpp"
#include "risfp/propagation.hpp"
#include "risfp/random.hpp"
#include "risfp/clusters.hpp"
#include "risfp/scene.hpp"
#include "risfp/grid_map.hpp"
#include "risfp/parallel.hpp"
#include "risfp/spatial_maps.hpp"
#include "risfp/channel.hpp"
#include "risfp/fingerprint.hpp"
#include "risfp/localize.hpp"
#include "risfp/config.hpp"
#include "risfp/io.hpp"
#include "risfp/pipeline.hpp"
