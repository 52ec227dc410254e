#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chronosparse/array.hpp"

namespace csp {

struct SourceId {
  std::string name;
  std::size_t index = 0;
};

// One source's regularly-indexed multivariate series. Timestamps are abstract
// integer ticks (one tick = one sampling step), strictly increasing. Missing
// positions hold the canonical fill value 0.0 and are tracked solely through
// `observed`; no NaN ever survives construction.
struct TimeSeries {
  SourceId source;
  std::vector<std::int64_t> timestamps;
  Array values;   // T x C
  Mask observed;  // T x C, true = real data

  std::size_t length() const { return timestamps.size(); }
  std::size_t channels() const { return values.rank() == 2 ? values.dim(1) : 0; }
};

// The three mask roles. They are stored separately end to end: `observed`
// tracks data missingness, `artificial` marks values hidden for
// self-supervised training, `padding` marks positions created by collation.
enum class MaskKind { observed, artificial, padding };

struct Vocabulary {
  static constexpr std::int32_t pad_id = 0;
  static constexpr std::int32_t unk_id = 1;

  std::map<char, std::int32_t> ids;  // symbol -> id, all ids >= 2

  std::size_t size() const { return ids.size() + 2; }

  std::int32_t lookup(char symbol) const {
    auto it = ids.find(symbol);
    return it == ids.end() ? unk_id : it->second;
  }

  // The 20 standard amino-acid letters, alphabetical, ids 2..21.
  static Vocabulary standard_amino_acids();
};

struct TokenSequence {
  SourceId source;
  std::string name;  // record header for FASTA inputs
  std::vector<std::int32_t> tokens;
  std::shared_ptr<const Vocabulary> vocabulary;

  std::size_t length() const { return tokens.size(); }
};

// Validates shapes and timestamp monotonicity. When `observed` is absent it
// is derived as "value is finite"; every non-finite value is replaced by 0.0
// with observed=false.
TimeSeries make_series(SourceId source, std::vector<std::int64_t> timestamps,
                       Array values, std::optional<Mask> observed = std::nullopt);

// Fraction of positions with observed=false.
double missing_rate(const TimeSeries& series);

}  // namespace csp
