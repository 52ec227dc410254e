#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "chronosparse/rng.hpp"
#include "chronosparse/series.hpp"

namespace csp::pipeline {

enum class Task { forecast, impute };

struct WindowSpec {
  std::size_t lookback = 0;  // L, ticks the model observes
  std::size_t horizon = 0;   // H, ticks to predict
  std::size_t stride = 1;
  // Channel indices (into the source series) whose values are known over
  // both lookback and horizon. Disjoint from the target channels.
  std::vector<std::size_t> exogenous_channels;
};

struct ChannelStats {
  double mean = 0.0;
  double stdev = 1.0;
};

// One training/evaluation instance. `artificial` marks observed values
// deliberately hidden from the model (self-supervised imputation targets);
// it is always a subset of input_observed.
struct SampleWindow {
  Array input;           // L x C (target channels only)
  Mask input_observed;   // L x C
  Array target;          // H x C
  Mask target_observed;  // H x C
  Array exog;            // (L+H) x E, E may be 0
  Mask artificial;       // L x C
  std::vector<ChannelStats> window_stats;  // filled by instance_normalize

  std::size_t input_len() const { return input.rows(); }
  std::size_t target_len() const { return target.rows(); }
  std::size_t channels() const { return input.cols(); }
  std::size_t exog_channels() const { return exog.empty() ? 0 : exog.cols(); }
};

struct PatchLayout {
  std::size_t count = 0;   // N
  std::size_t len = 0;     // P
  std::size_t stride = 0;  // S
};

// Samples collated along a batch axis, zero-padded to this batch's maximum
// lengths. pad_mask / target_pad_mask mark real positions; padded positions
// carry 0.0 and must stay inert in every downstream computation.
struct WindowBatch {
  Array input;           // B x Lmax x C
  Mask input_observed;   // B x Lmax x C
  Mask artificial;       // B x Lmax x C
  Mask pad_mask;         // B x Lmax
  Array target;          // B x Hmax x C
  Mask target_observed;  // B x Hmax x C
  Mask target_pad_mask;  // B x Hmax
  Array exog;            // B x Emax x E
  std::optional<PatchLayout> patch_layout;
  std::vector<std::vector<ChannelStats>> window_stats;  // per sample

  std::size_t size() const { return input.rank() == 3 ? input.dim(0) : 0; }
  std::size_t input_len() const { return input.rank() == 3 ? input.dim(1) : 0; }
  std::size_t target_len() const { return target.rank() == 3 ? target.dim(1) : 0; }
  std::size_t channels() const { return input.rank() == 3 ? input.dim(2) : 0; }
  std::size_t exog_channels() const { return exog.empty() ? 0 : exog.dim(2); }
  bool normalized() const { return !window_stats.empty(); }
};

// Alignment-free multi-source instance: one window per source, each on its
// own timebase. Which source is the prediction target is decided by the
// model spec, not the data.
struct MultiSourceWindow {
  std::vector<SampleWindow> per_source;
};

struct MultiSourceBatch {
  std::vector<WindowBatch> per_source;
  std::size_t size() const { return per_source.empty() ? 0 : per_source[0].size(); }
};

struct TokenBatch {
  std::vector<std::int32_t> ids;  // B x Lmax row-major, PAD=0
  Mask pad_mask;                  // B x Lmax
  std::size_t size() const { return pad_mask.rank() == 2 ? pad_mask.dim(0) : 0; }
  std::size_t max_len() const { return pad_mask.rank() == 2 ? pad_mask.dim(1) : 0; }
};

// floor((T - L - H) / stride) + 1 when T >= L + H, else 0.
std::size_t window_count(std::size_t series_len, const WindowSpec& spec);

// Window k starts at tick offset k * stride.
SampleWindow slice_window(const TimeSeries& series, const WindowSpec& spec, std::size_t k);

// ceil(max(L - P, 0) / S) + 1.
std::size_t patch_count(std::size_t len, std::size_t patch_len, std::size_t patch_stride);

struct PatchSet {
  Array patches;  // N x P x C
  Mask pad_mask;  // N x P, true = real position
  std::size_t count() const { return patches.rank() == 3 ? patches.dim(0) : 0; }
};

// Segments a L x C sequence (or rank-1, treated as L x 1) into patches of
// length P at stride S. Positions at or beyond L are zero-padded with
// pad_mask=false; with S == P, concatenating the non-padded positions
// reconstructs the sequence exactly.
PatchSet patchify(const Array& sequence, std::size_t patch_len, std::size_t patch_stride);

// Collates samples, padding each axis to this batch's maximum (never a
// global maximum). Optionally records the patch layout for patch models.
WindowBatch pad_batch(const std::vector<SampleWindow>& samples,
                      std::optional<PatchLayout> patch = std::nullopt);
MultiSourceBatch pad_multi_batch(const std::vector<MultiSourceWindow>& samples);
TokenBatch pad_token_batch(const std::vector<TokenSequence>& sequences);

// Appends inert positions (value 0, pad_mask=false) to the input and target
// axes. No downstream masked loss or metric may change.
void extend_padding(WindowBatch& batch, std::size_t extra_input, std::size_t extra_target);

enum class ScalerKind { standard, minmax };

// Unified affine form: forward x' = (x - center) / (spread + epsilon).
// standard: center=mean, spread=population std; minmax: center=min,
// spread=max-min. Statistics come from observed entries only; a channel
// with no observed entries gets identity parameters.
struct ScalerParams {
  ScalerKind kind = ScalerKind::standard;
  std::vector<double> center;
  std::vector<double> spread;
  double epsilon = 1e-8;
  std::size_t channels() const { return center.size(); }
};

enum class ScaleDirection { forward, inverse };

ScalerParams fit_scaler(ScalerKind kind, const std::vector<const TimeSeries*>& train_series,
                        double epsilon = 1e-8);

// In-place; positions with observed=false stay exactly 0.0 in both directions.
void apply_scaler(const ScalerParams& params, Array& data, const Mask& observed,
                  ScaleDirection direction);

// Per-channel standardization from the window's observed *lookback* entries
// only (never the target). Input and target are both transformed; the stats
// land in window_stats so model outputs can be denormalized later.
SampleWindow instance_normalize(SampleWindow window, double epsilon = 1e-8);

// Inverse of the instance_normalize transform for one channel value.
inline double denormalize_value(double v, const ChannelStats& stats, double epsilon = 1e-8) {
  return v * (stats.stdev + epsilon) + stats.mean;
}

struct MaskStrategy {
  enum class Kind { none, mcar, block };
  Kind kind = Kind::none;
  double rate = 0.0;          // mcar: per-position hide probability
  std::size_t block_len = 0;  // block: run length
  std::size_t n_blocks = 0;   // block: number of runs

  static MaskStrategy none() { return {}; }
  static MaskStrategy mcar(double rate) { return {Kind::mcar, rate, 0, 0}; }
  static MaskStrategy block(std::size_t block_len, std::size_t n_blocks) {
    return {Kind::block, 0.0, block_len, n_blocks};
  }
};

// True = artificially hidden. mcar hides positions independently; block
// hides contiguous runs along the time axis (rank-2 shapes pick the channel
// per block), clipped at the boundary, overlaps allowed.
Mask generate_mask(const std::vector<std::size_t>& shape, const MaskStrategy& strategy,
                   RngStream& rng);

// Intersects with input_observed (only real values can be hidden) and
// stores the result on the window.
void apply_artificial_mask(SampleWindow& window, const Mask& mask);

struct MaskPair {
  Mask model_visible;  // L x C
  Mask loss_mask;      // imputation: L x C; forecasting: H x C
};
MaskPair compose_masks(const SampleWindow& window, Task task);

// Batched form; padding positions are excluded from both masks.
struct BatchMasks {
  Mask model_visible;  // B x L x C
  Mask loss_mask;      // B x (L|H) x C
};
BatchMasks compose_masks(const WindowBatch& batch, Task task);

// Shared knobs for turning raw windows into model-ready batches.
struct PipelineOptions {
  Task task = Task::forecast;
  bool instance_norm = false;
  MaskStrategy mask;  // artificial-mask strategy for imputation
  double epsilon = 1e-8;
};

}  // namespace csp::pipeline
