#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "chronosparse/series.hpp"

namespace csp::ingest {

// A corpus entry is either one multivariate series or a set of token
// sequences (e.g. proteins). Sources never need to share timestamps,
// lengths, or channel counts; nothing is resampled or aligned.
using SourceData = std::variant<TimeSeries, std::vector<TokenSequence>>;

struct NamedSource {
  std::string name;
  SourceData data;
  std::vector<std::string> channel_names;  // series sources; empty for tokens
};

struct Corpus {
  std::vector<SourceData> sources;  // ordered by SourceId index
  std::vector<std::string> names;   // names[i] belongs to sources[i]
  std::vector<std::vector<std::string>> channel_names;

  std::size_t size() const { return sources.size(); }
  const TimeSeries& series(std::size_t index) const {
    return std::get<TimeSeries>(sources[index]);
  }
};

struct LoadedSeries {
  TimeSeries series;
  std::vector<std::string> channel_names;
};

// Wide layout: header `timestamp,<ch1>,<ch2>,...`. Rows may arrive unsorted;
// they are sorted by tick. Empty or unparseable cells become missing.
LoadedSeries load_csv_wide(std::string_view text, const std::string& source_name);

// Long layout: header exactly `timestamp,channel,value`. Pivots to wide with
// channels ordered lexicographically; absent (tick, channel) pairs are missing.
LoadedSeries load_csv_long(std::string_view text, const std::string& source_name);

// Standard `>`-header FASTA. Characters outside the vocabulary map to UNK;
// multi-line records are concatenated.
std::vector<TokenSequence> load_fasta(std::string_view text,
                                      const std::string& source_name,
                                      std::shared_ptr<const Vocabulary> vocabulary);

// Inverse of load_csv_wide: missing cells are written empty.
std::string write_csv_wide(const TimeSeries& series,
                           const std::vector<std::string>& channel_names = {});

// Assigns SourceId indices in lexicographic name order. Pure pass-through:
// no source's data is modified in any way.
Corpus build_corpus(std::vector<NamedSource> sources);

}  // namespace csp::ingest
