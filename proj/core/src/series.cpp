#include "chronosparse/series.hpp"

#include <cmath>
#include <sstream>

namespace csp {

Vocabulary Vocabulary::standard_amino_acids() {
  static const char residues[] = "ACDEFGHIKLMNPQRSTVWY";
  Vocabulary vocab;
  std::int32_t next = 2;
  for (const char* p = residues; *p; ++p) vocab.ids[*p] = next++;
  return vocab;
}

TimeSeries make_series(SourceId source, std::vector<std::int64_t> timestamps,
                       Array values, std::optional<Mask> observed) {
  if (values.rank() != 2) {
    throw Error(Errc::shape_mismatch, "values must be a T x C array");
  }
  const std::size_t t = values.dim(0);
  const std::size_t c = values.dim(1);
  if (timestamps.size() != t) {
    std::ostringstream msg;
    msg << "timestamps length " << timestamps.size() << " != value rows " << t;
    throw Error(Errc::shape_mismatch, msg.str());
  }
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    if (timestamps[i] <= timestamps[i - 1]) {
      std::ostringstream msg;
      msg << "tick " << timestamps[i] << " at row " << i << " does not increase";
      throw Error(Errc::non_monotonic_timestamps, msg.str());
    }
  }

  Mask mask = observed ? std::move(*observed) : Mask({t, c});
  if (mask.shape() != values.shape()) {
    throw Error(Errc::shape_mismatch, "observed mask shape differs from values");
  }
  const bool derive = !observed.has_value();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const bool finite = std::isfinite(values[i]);
    if (derive) mask[i] = finite ? 1 : 0;
    if (!finite) mask[i] = 0;
    if (!mask[i]) values[i] = 0.0;  // canonical fill
  }

  TimeSeries series;
  series.source = std::move(source);
  series.timestamps = std::move(timestamps);
  series.values = std::move(values);
  series.observed = std::move(mask);
  return series;
}

double missing_rate(const TimeSeries& series) {
  const std::size_t n = series.observed.size();
  if (n == 0) throw Error(Errc::empty_series, "missing_rate over empty series");
  return static_cast<double>(n - count_true(series.observed)) /
         static_cast<double>(n);
}

}  // namespace csp
