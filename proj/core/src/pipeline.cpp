#include "chronosparse/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace csp::pipeline {

std::size_t window_count(std::size_t series_len, const WindowSpec& spec) {
  const std::size_t need = spec.lookback + spec.horizon;
  if (series_len < need) return 0;
  return (series_len - need) / spec.stride + 1;
}

SampleWindow slice_window(const TimeSeries& series, const WindowSpec& spec, std::size_t k) {
  const std::size_t count = window_count(series.length(), spec);
  if (k >= count) {
    std::ostringstream msg;
    msg << "window " << k << " out of range (count " << count << ")";
    throw Error(Errc::index_out_of_range, msg.str());
  }
  const std::size_t c_all = series.channels();
  for (std::size_t e : spec.exogenous_channels) {
    if (e >= c_all) throw Error(Errc::channel_mismatch, "exogenous channel index out of range");
  }
  std::vector<bool> is_exog(c_all, false);
  for (std::size_t e : spec.exogenous_channels) is_exog[e] = true;
  std::vector<std::size_t> targets;
  for (std::size_t c = 0; c < c_all; ++c) {
    if (!is_exog[c]) targets.push_back(c);
  }

  const std::size_t start = k * spec.stride;
  const std::size_t l = spec.lookback;
  const std::size_t h = spec.horizon;
  const std::size_t ct = targets.size();
  const std::size_t e = spec.exogenous_channels.size();

  SampleWindow w;
  w.input = Array({l, ct});
  w.input_observed = Mask({l, ct});
  w.target = Array({h, ct});
  w.target_observed = Mask({h, ct});
  w.artificial = Mask({l, ct});
  w.exog = Array({l + h, e});

  for (std::size_t t = 0; t < l; ++t) {
    for (std::size_t j = 0; j < ct; ++j) {
      w.input.at(t, j) = series.values.at(start + t, targets[j]);
      w.input_observed.at(t, j) = series.observed.at(start + t, targets[j]);
    }
  }
  for (std::size_t t = 0; t < h; ++t) {
    for (std::size_t j = 0; j < ct; ++j) {
      w.target.at(t, j) = series.values.at(start + l + t, targets[j]);
      w.target_observed.at(t, j) = series.observed.at(start + l + t, targets[j]);
    }
  }
  for (std::size_t t = 0; t < l + h; ++t) {
    for (std::size_t j = 0; j < e; ++j) {
      w.exog.at(t, j) = series.values.at(start + t, spec.exogenous_channels[j]);
    }
  }
  return w;
}

std::size_t patch_count(std::size_t len, std::size_t patch_len, std::size_t patch_stride) {
  if (len <= patch_len) return 1;
  return (len - patch_len + patch_stride - 1) / patch_stride + 1;
}

PatchSet patchify(const Array& sequence, std::size_t patch_len, std::size_t patch_stride) {
  if (sequence.rank() > 2) {
    throw Error(Errc::shape_mismatch, "patchify expects a rank-1 or rank-2 sequence");
  }
  const std::size_t len = sequence.rows();
  const std::size_t c = sequence.cols();
  const std::size_t n = patch_count(len, patch_len, patch_stride);

  PatchSet out;
  out.patches = Array({n, patch_len, c});
  out.pad_mask = Mask({n, patch_len});
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t i = 0; i < patch_len; ++i) {
      const std::size_t pos = p * patch_stride + i;
      if (pos >= len) continue;  // stays zero-padded, mask false
      out.pad_mask.at(p, i) = 1;
      for (std::size_t j = 0; j < c; ++j) {
        out.patches.at(p, i, j) = sequence[pos * c + j];
      }
    }
  }
  return out;
}

namespace {

void check_consistent_stats(const std::vector<SampleWindow>& samples) {
  const bool first_has_stats = !samples[0].window_stats.empty();
  for (const auto& s : samples) {
    if (s.window_stats.empty() == first_has_stats) {
      throw Error(Errc::shape_mismatch, "mixed instance-norm state within one batch");
    }
  }
}

}  // namespace

WindowBatch pad_batch(const std::vector<SampleWindow>& samples,
                      std::optional<PatchLayout> patch) {
  if (samples.empty()) throw Error(Errc::empty_batch, "pad_batch over zero samples");
  const std::size_t b = samples.size();
  const std::size_t c = samples[0].channels();
  const std::size_t e = samples[0].exog_channels();
  std::size_t l_max = 0, h_max = 0, x_max = 0;
  for (const auto& s : samples) {
    if (s.channels() != c) throw Error(Errc::channel_mismatch, "samples disagree on channel count");
    if (s.exog_channels() != e) {
      throw Error(Errc::channel_mismatch, "samples disagree on exogenous channel count");
    }
    l_max = std::max(l_max, s.input_len());
    h_max = std::max(h_max, s.target_len());
    x_max = std::max(x_max, s.exog.rows());
  }
  if (!samples[0].window_stats.empty()) check_consistent_stats(samples);

  WindowBatch batch;
  batch.input = Array({b, l_max, c});
  batch.input_observed = Mask({b, l_max, c});
  batch.artificial = Mask({b, l_max, c});
  batch.pad_mask = Mask({b, l_max});
  batch.target = Array({b, h_max, c});
  batch.target_observed = Mask({b, h_max, c});
  batch.target_pad_mask = Mask({b, h_max});
  batch.exog = Array({b, x_max, e});
  batch.patch_layout = patch;
  if (batch.patch_layout) {
    batch.patch_layout->count = patch_count(l_max, patch->len, patch->stride);
  }

  for (std::size_t i = 0; i < b; ++i) {
    const auto& s = samples[i];
    for (std::size_t t = 0; t < s.input_len(); ++t) {
      batch.pad_mask.at(i, t) = 1;
      for (std::size_t j = 0; j < c; ++j) {
        batch.input.at(i, t, j) = s.input.at(t, j);
        batch.input_observed.at(i, t, j) = s.input_observed.at(t, j);
        batch.artificial.at(i, t, j) = s.artificial.at(t, j);
      }
    }
    for (std::size_t t = 0; t < s.target_len(); ++t) {
      batch.target_pad_mask.at(i, t) = 1;
      for (std::size_t j = 0; j < c; ++j) {
        batch.target.at(i, t, j) = s.target.at(t, j);
        batch.target_observed.at(i, t, j) = s.target_observed.at(t, j);
      }
    }
    for (std::size_t t = 0; t < s.exog.rows(); ++t) {
      for (std::size_t j = 0; j < e; ++j) batch.exog.at(i, t, j) = s.exog.at(t, j);
    }
    if (!s.window_stats.empty()) batch.window_stats.push_back(s.window_stats);
  }
  if (!batch.window_stats.empty() && batch.window_stats.size() != b) {
    throw Error(Errc::shape_mismatch, "mixed instance-norm state within one batch");
  }
  return batch;
}

MultiSourceBatch pad_multi_batch(const std::vector<MultiSourceWindow>& samples) {
  if (samples.empty()) throw Error(Errc::empty_batch, "pad_multi_batch over zero samples");
  const std::size_t n_sources = samples[0].per_source.size();
  for (const auto& s : samples) {
    if (s.per_source.size() != n_sources) {
      throw Error(Errc::shape_mismatch, "samples disagree on source count");
    }
  }
  MultiSourceBatch batch;
  std::vector<SampleWindow> column;
  column.reserve(samples.size());
  for (std::size_t src = 0; src < n_sources; ++src) {
    column.clear();
    for (const auto& s : samples) column.push_back(s.per_source[src]);
    batch.per_source.push_back(pad_batch(column));
  }
  return batch;
}

TokenBatch pad_token_batch(const std::vector<TokenSequence>& sequences) {
  if (sequences.empty()) throw Error(Errc::empty_batch, "pad_token_batch over zero sequences");
  const std::size_t b = sequences.size();
  std::size_t l_max = 0;
  for (const auto& s : sequences) l_max = std::max(l_max, s.length());

  TokenBatch batch;
  batch.ids.assign(b * l_max, Vocabulary::pad_id);
  batch.pad_mask = Mask({b, l_max});
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t t = 0; t < sequences[i].length(); ++t) {
      batch.ids[i * l_max + t] = sequences[i].tokens[t];
      batch.pad_mask.at(i, t) = 1;
    }
  }
  return batch;
}

void extend_padding(WindowBatch& batch, std::size_t extra_input, std::size_t extra_target) {
  const std::size_t b = batch.size();
  const std::size_t c = batch.channels();
  const std::size_t l = batch.input_len();
  const std::size_t h = batch.target_len();
  const std::size_t l2 = l + extra_input;
  const std::size_t h2 = h + extra_target;

  auto grow3 = [&](auto& tensor, std::size_t old_len, std::size_t new_len) {
    auto grown = std::decay_t<decltype(tensor)>({b, new_len, c});
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t t = 0; t < old_len; ++t) {
        for (std::size_t j = 0; j < c; ++j) {
          grown.at(i, t, j) = tensor.at(i, t, j);
        }
      }
    }
    tensor = std::move(grown);
  };
  auto grow2 = [&](Mask& mask, std::size_t old_len, std::size_t new_len) {
    Mask grown({b, new_len});
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t t = 0; t < old_len; ++t) grown.at(i, t) = mask.at(i, t);
    }
    mask = std::move(grown);
  };

  if (extra_input > 0) {
    grow3(batch.input, l, l2);
    grow3(batch.input_observed, l, l2);
    grow3(batch.artificial, l, l2);
    grow2(batch.pad_mask, l, l2);
    if (batch.patch_layout) {
      batch.patch_layout->count =
          patch_count(l2, batch.patch_layout->len, batch.patch_layout->stride);
    }
  }
  if (extra_target > 0) {
    grow3(batch.target, h, h2);
    grow3(batch.target_observed, h, h2);
    grow2(batch.target_pad_mask, h, h2);
  }
}

ScalerParams fit_scaler(ScalerKind kind, const std::vector<const TimeSeries*>& train_series,
                        double epsilon) {
  if (train_series.empty()) throw Error(Errc::no_series, "fit_scaler needs at least one series");
  const std::size_t c = train_series[0]->channels();
  for (const auto* s : train_series) {
    if (s->channels() != c) throw Error(Errc::channel_mismatch, "series disagree on channel count");
  }

  ScalerParams params;
  params.kind = kind;
  params.epsilon = epsilon;
  params.center.assign(c, 0.0);
  params.spread.assign(c, 1.0);

  for (std::size_t j = 0; j < c; ++j) {
    std::size_t n = 0;
    double sum = 0.0;
    double lo = 0.0, hi = 0.0;
    for (const auto* s : train_series) {
      for (std::size_t t = 0; t < s->length(); ++t) {
        if (!s->observed.at(t, j)) continue;
        const double v = s->values.at(t, j);
        if (n == 0) {
          lo = hi = v;
        } else {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        sum += v;
        ++n;
      }
    }
    if (n == 0) continue;  // identity fallback

    if (kind == ScalerKind::standard) {
      const double mean = sum / static_cast<double>(n);
      double sq = 0.0;
      for (const auto* s : train_series) {
        for (std::size_t t = 0; t < s->length(); ++t) {
          if (!s->observed.at(t, j)) continue;
          const double d = s->values.at(t, j) - mean;
          sq += d * d;
        }
      }
      params.center[j] = mean;
      params.spread[j] = std::sqrt(sq / static_cast<double>(n));
    } else {
      params.center[j] = lo;
      params.spread[j] = hi - lo;
    }
  }
  return params;
}

void apply_scaler(const ScalerParams& params, Array& data, const Mask& observed,
                  ScaleDirection direction) {
  if (data.shape() != observed.shape()) {
    throw Error(Errc::shape_mismatch, "data and observed mask shapes differ");
  }
  const std::size_t c = data.shape().back();
  if (c != params.channels()) {
    throw Error(Errc::channel_mismatch, "scaler fitted for a different channel count");
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!observed[i]) continue;  // missing positions stay 0.0
    const std::size_t j = i % c;
    const double denom = params.spread[j] + params.epsilon;
    if (direction == ScaleDirection::forward) {
      data[i] = (data[i] - params.center[j]) / denom;
    } else {
      data[i] = data[i] * denom + params.center[j];
    }
  }
}

SampleWindow instance_normalize(SampleWindow window, double epsilon) {
  const std::size_t l = window.input_len();
  const std::size_t h = window.target_len();
  const std::size_t c = window.channels();

  window.window_stats.assign(c, ChannelStats{0.0, 1.0});
  for (std::size_t j = 0; j < c; ++j) {
    std::size_t n = 0;
    double sum = 0.0;
    for (std::size_t t = 0; t < l; ++t) {
      if (window.input_observed.at(t, j)) {
        sum += window.input.at(t, j);
        ++n;
      }
    }
    if (n == 0) continue;  // identity stats
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (std::size_t t = 0; t < l; ++t) {
      if (window.input_observed.at(t, j)) {
        const double d = window.input.at(t, j) - mean;
        sq += d * d;
      }
    }
    window.window_stats[j] = {mean, std::sqrt(sq / static_cast<double>(n))};
  }

  for (std::size_t t = 0; t < l; ++t) {
    for (std::size_t j = 0; j < c; ++j) {
      if (!window.input_observed.at(t, j)) continue;
      const auto& st = window.window_stats[j];
      window.input.at(t, j) = (window.input.at(t, j) - st.mean) / (st.stdev + epsilon);
    }
  }
  for (std::size_t t = 0; t < h; ++t) {
    for (std::size_t j = 0; j < c; ++j) {
      if (!window.target_observed.at(t, j)) continue;
      const auto& st = window.window_stats[j];
      window.target.at(t, j) = (window.target.at(t, j) - st.mean) / (st.stdev + epsilon);
    }
  }
  return window;
}

Mask generate_mask(const std::vector<std::size_t>& shape, const MaskStrategy& strategy,
                   RngStream& rng) {
  if (shape.empty() || shape.size() > 2) {
    throw Error(Errc::shape_mismatch, "generate_mask expects a rank-1 or rank-2 shape");
  }
  Mask mask(shape);
  switch (strategy.kind) {
    case MaskStrategy::Kind::none:
      break;
    case MaskStrategy::Kind::mcar: {
      if (strategy.rate < 0.0 || strategy.rate > 1.0) {
        throw Error(Errc::invalid_rate, "mcar rate must lie in [0,1]");
      }
      for (std::size_t i = 0; i < mask.size(); ++i) {
        if (rng.next_uniform() < strategy.rate) mask[i] = 1;
      }
      break;
    }
    case MaskStrategy::Kind::block: {
      const std::size_t len = shape[0];
      const std::size_t c = shape.size() == 2 ? shape[1] : 1;
      if (len == 0 || strategy.block_len == 0) break;
      for (std::size_t b = 0; b < strategy.n_blocks; ++b) {
        const std::size_t j =
            c > 1 ? static_cast<std::size_t>(rng.next_uniform() * static_cast<double>(c)) : 0;
        const std::size_t start =
            static_cast<std::size_t>(rng.next_uniform() * static_cast<double>(len));
        const std::size_t stop = std::min(len, start + strategy.block_len);
        for (std::size_t t = start; t < stop; ++t) mask[t * c + j] = 1;
      }
      break;
    }
  }
  return mask;
}

void apply_artificial_mask(SampleWindow& window, const Mask& mask) {
  if (mask.shape() != window.input_observed.shape()) {
    throw Error(Errc::shape_mismatch, "artificial mask shape differs from window input");
  }
  for (std::size_t i = 0; i < mask.size(); ++i) {
    window.artificial[i] = mask[i] && window.input_observed[i];
  }
}

MaskPair compose_masks(const SampleWindow& window, Task task) {
  MaskPair out;
  if (task == Task::impute) {
    out.model_visible = Mask(window.input_observed.shape());
    for (std::size_t i = 0; i < out.model_visible.size(); ++i) {
      out.model_visible[i] = window.input_observed[i] && !window.artificial[i];
    }
    out.loss_mask = window.artificial;
  } else {
    out.model_visible = window.input_observed;
    out.loss_mask = window.target_observed;
  }
  return out;
}

BatchMasks compose_masks(const WindowBatch& batch, Task task) {
  const std::size_t b = batch.size();
  const std::size_t l = batch.input_len();
  const std::size_t h = batch.target_len();
  const std::size_t c = batch.channels();

  BatchMasks out;
  out.model_visible = Mask({b, l, c});
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t t = 0; t < l; ++t) {
      if (!batch.pad_mask.at(i, t)) continue;
      for (std::size_t j = 0; j < c; ++j) {
        const bool obs = batch.input_observed.at(i, t, j);
        const bool art = batch.artificial.at(i, t, j);
        out.model_visible.at(i, t, j) = task == Task::impute ? (obs && !art) : obs;
      }
    }
  }
  if (task == Task::impute) {
    out.loss_mask = Mask({b, l, c});
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t t = 0; t < l; ++t) {
        if (!batch.pad_mask.at(i, t)) continue;
        for (std::size_t j = 0; j < c; ++j) {
          out.loss_mask.at(i, t, j) = batch.artificial.at(i, t, j);
        }
      }
    }
  } else {
    out.loss_mask = Mask({b, h, c});
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t t = 0; t < h; ++t) {
        if (!batch.target_pad_mask.at(i, t)) continue;
        for (std::size_t j = 0; j < c; ++j) {
          out.loss_mask.at(i, t, j) = batch.target_observed.at(i, t, j);
        }
      }
    }
  }
  return out;
}

}  // namespace csp::pipeline
