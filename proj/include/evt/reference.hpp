// Copyright 2026 The evtaug Authors
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

#include "evt/event.hpp"
#include "evt/representations.hpp"
#include "evt/transform.hpp"

// Straight-line single-threaded implementations of the transform and
// rasterization kernels: no OpenMP, no bucketing, one plain loop each.
// They are the ground truth the parallel kernels are compared against in the
// test suite (bit-exact, including floating-point accumulation), and the
// baseline for the benchmark target.
namespace evt::reference {

VptResult apply_vpt(const EventStream& stream, const VptParams& params);
EventStream apply_sts(const EventStream& stream, const StsParams& params);
VptResult apply_spatial_rotation(const EventStream& stream, double theta, double y_c, double x_c);

Raster event_frame(const EventStream& stream);
Raster event_count(const EventStream& stream);
Raster voxel_grid(const EventStream& stream, int bins,
                  VoxelMode mode = VoxelMode::SignedSingle);

}  // namespace evt::reference
