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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "evt/event.hpp"
#include "evt/io.hpp"
#include "evt/representations.hpp"
#include "evt/transform.hpp"

namespace evt {

/// Augmentation strategies exposed by the CLI. VptSts picks viewpoint
/// transform or stretch per sample with equal probability.
enum class Strategy { None, Rotation, Vpt, Sts, VptSts };

const char* strategy_name(Strategy strategy);
Strategy strategy_from_name(const std::string& name);

/// Invalid configuration (maps to CLI exit code 2, as opposed to per-file
/// processing failures which are recorded in the report).
class config_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AugmentConfig {
    Strategy strategy = Strategy::Vpt;
    double theta_max = kDefaultThetaMax;  // radians, in [0, pi/2)
    std::optional<double> tau;            // us/pixel; nullopt = per-stream default_tau
    PlanePolicy plane_policy = PlanePolicy::Random;
    CenterPolicy center_policy = CenterPolicy::Midpoint;
    uint64_t seed = 0;
    double probability = 1.0;  // chance a given file is augmented at all
};

void validate_config(const AugmentConfig& config);

/// Decode-side options for formats that do not carry their own geometry.
struct IoOptions {
    std::optional<FormatTag> format;  // explicit override; else inferred per file
    SensorGeometry geometry{128, 128};
};

struct BatchOptions {
    IoOptions io;
    int workers = 0;  // 0 = hardware concurrency; EVT_THREADS caps either way
};

/// Worker-pool width: `requested` (or hardware concurrency when 0), capped
/// by the EVT_THREADS environment variable when set.
int resolve_workers(int requested);

struct RotationParams {
    double theta = 0.0;
    double center_y = 0.0;
    double center_x = 0.0;
};

/// Everything drawn for one input. Exactly one of the optionals is set when
/// `applied` is true. Draw order from the file seed (seed ^ file index):
/// apply-coin; strategy coin (VptSts only); then plane, theta, center for
/// vpt/sts, or theta, center_y, center_x for rotation.
struct DrawnParams {
    bool applied = false;
    Strategy effective = Strategy::None;
    std::optional<VptParams> vpt;
    std::optional<StsParams> sts;
    std::optional<RotationParams> rotation;
};

struct TransformOutcome {
    EventStream stream;
    TransformStats stats;
    DrawnParams params;
};

/// Applies the configured augmentation to one canonical stream with the
/// given per-file seed. Pure: identical (stream, config, seed) give
/// identical results regardless of threading.
TransformOutcome transform_stream(const EventStream& stream, const AugmentConfig& config,
                                  uint64_t file_seed);

/// Batch augmentation over input files. Each file i is processed with seed
/// config.seed ^ i, outputs are written to out_dir in the input's format,
/// and the JSON report lists files in input order regardless of worker
/// scheduling. Per-file failures land in the report without aborting the
/// batch; the "failures" field counts them.
nlohmann::json run_augment(const AugmentConfig& config, const std::vector<std::string>& inputs,
                           const std::string& out_dir, const BatchOptions& options);

// ---------------------------------------------------------------------------
// Analysis harnesses
// ---------------------------------------------------------------------------

struct GridPoint {
    Plane plane;
    double theta;
};

/// One "plane theta" pair per line ('#' comments, blank lines ignored),
/// e.g. "yt 0.2".
std::vector<GridPoint> parse_grid(const std::string& text);
std::vector<GridPoint> read_grid_file(const std::string& path);

/// For each grid point, viewpoint-transforms the input (auto tau, midpoint
/// centers), rasterizes, and reports the raster distance to the unperturbed
/// raster. The report carries both a flat entry list and a per-plane matrix.
nlohmann::json run_perturb(const std::string& input, const std::vector<GridPoint>& grid,
                           RasterKind kind, int bins, const IoOptions& io);

/// Per-plane rows of distances, one column per grid angle.
std::string perturb_text_grid(const nlohmann::json& report);

/// Per-angle mean raster distance and mean spatial-discard fraction across
/// the inputs, for one strategy (Rotation, Vpt, or Sts) at a fixed plane
/// with midpoint centers.
nlohmann::json run_sweep(const std::vector<std::string>& inputs,
                         const std::vector<double>& thetas, Strategy strategy, Plane plane,
                         RasterKind kind, int bins, std::optional<double> tau,
                         const IoOptions& io);

nlohmann::json run_synth(const std::string& scene_path, const std::string& out_path,
                         std::optional<FormatTag> format);

nlohmann::json run_repr(const std::string& input, RasterKind kind, int bins,
                        const std::string& out_path, const IoOptions& io);

}  // namespace evt
