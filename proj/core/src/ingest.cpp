#include "chronosparse/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace csp::ingest {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string> split_cells(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.emplace_back(line.substr(start));
      break;
    }
    cells.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

std::string trim(std::string s) {
  auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && issp(s.front())) s.erase(s.begin());
  while (!s.empty() && issp(s.back())) s.pop_back();
  return s;
}

bool parse_tick(const std::string& cell, std::int64_t& out) {
  const std::string s = trim(cell);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_value(const std::string& cell, double& out) {
  const std::string s = trim(cell);
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

LoadedSeries load_csv_wide(std::string_view text, const std::string& source_name) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(Errc::header_missing, source_name + ": no header line");

  auto header = split_cells(lines[0]);
  if (header.empty() || trim(header[0]) != "timestamp") {
    throw Error(Errc::header_missing, source_name + ": first column must be 'timestamp'");
  }
  if (header.size() < 2) {
    throw Error(Errc::header_missing, source_name + ": no channel columns");
  }
  std::vector<std::string> channels;
  for (std::size_t i = 1; i < header.size(); ++i) channels.push_back(trim(header[i]));
  const std::size_t c = channels.size();

  struct Row {
    std::int64_t tick;
    std::vector<double> values;
    std::vector<std::uint8_t> observed;
  };
  std::vector<Row> rows;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    auto cells = split_cells(lines[li]);
    if (cells.size() != c + 1) {
      std::ostringstream msg;
      msg << source_name << ": line " << li + 1 << " has " << cells.size()
          << " cells, expected " << c + 1;
      throw Error(Errc::io_error, msg.str());
    }
    Row row;
    if (!parse_tick(cells[0], row.tick)) {
      std::ostringstream msg;
      msg << source_name << ": unparseable timestamp '" << cells[0] << "' at line " << li + 1;
      throw Error(Errc::io_error, msg.str());
    }
    row.values.resize(c, 0.0);
    row.observed.resize(c, 0);
    for (std::size_t j = 0; j < c; ++j) {
      double v = 0.0;
      if (parse_value(cells[j + 1], v)) {
        row.values[j] = v;
        row.observed[j] = 1;
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(Errc::empty_file, source_name + ": no data rows");

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.tick < b.tick; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].tick == rows[i - 1].tick) {
      std::ostringstream msg;
      msg << source_name << ": tick " << rows[i].tick << " appears twice";
      throw Error(Errc::duplicate_timestamp, msg.str());
    }
  }

  const std::size_t t = rows.size();
  std::vector<std::int64_t> ticks(t);
  Array values({t, c});
  Mask observed({t, c});
  for (std::size_t i = 0; i < t; ++i) {
    ticks[i] = rows[i].tick;
    for (std::size_t j = 0; j < c; ++j) {
      values.at(i, j) = rows[i].values[j];
      observed.at(i, j) = rows[i].observed[j];
    }
  }

  LoadedSeries out;
  out.series = make_series({source_name, 0}, std::move(ticks), std::move(values),
                           std::move(observed));
  out.channel_names = std::move(channels);
  return out;
}

LoadedSeries load_csv_long(std::string_view text, const std::string& source_name) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(Errc::header_missing, source_name + ": no header line");

  auto header = split_cells(lines[0]);
  if (header.size() != 3 || trim(header[0]) != "timestamp" ||
      trim(header[1]) != "channel" || trim(header[2]) != "value") {
    throw Error(Errc::header_missing,
                source_name + ": long layout requires header 'timestamp,channel,value'");
  }

  struct Cell {
    double value;
    bool observed;
  };
  std::map<std::pair<std::int64_t, std::string>, Cell> cells;
  std::set<std::int64_t> ticks;
  std::set<std::string> channels;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    auto row = split_cells(lines[li]);
    if (row.size() != 3) {
      std::ostringstream msg;
      msg << source_name << ": line " << li + 1 << " has " << row.size()
          << " cells, expected 3";
      throw Error(Errc::io_error, msg.str());
    }
    std::int64_t tick = 0;
    if (!parse_tick(row[0], tick)) {
      std::ostringstream msg;
      msg << source_name << ": unparseable timestamp '" << row[0] << "' at line " << li + 1;
      throw Error(Errc::io_error, msg.str());
    }
    const std::string channel = trim(row[1]);
    Cell cell{0.0, false};
    double v = 0.0;
    if (parse_value(row[2], v)) cell = {v, true};
    auto key = std::make_pair(tick, channel);
    if (!cells.emplace(key, cell).second) {
      std::ostringstream msg;
      msg << source_name << ": cell (" << tick << ", " << channel << ") appears twice";
      throw Error(Errc::duplicate_cell, msg.str());
    }
    ticks.insert(tick);
    channels.insert(channel);
  }
  if (cells.empty()) throw Error(Errc::empty_file, source_name + ": no data rows");

  std::vector<std::int64_t> tick_list(ticks.begin(), ticks.end());
  std::vector<std::string> channel_list(channels.begin(), channels.end());
  const std::size_t t = tick_list.size();
  const std::size_t c = channel_list.size();
  Array values({t, c});
  Mask observed({t, c});
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      auto it = cells.find({tick_list[i], channel_list[j]});
      if (it != cells.end() && it->second.observed) {
        values.at(i, j) = it->second.value;
        observed.at(i, j) = 1;
      }
    }
  }

  LoadedSeries out;
  out.series = make_series({source_name, 0}, std::move(tick_list), std::move(values),
                           std::move(observed));
  out.channel_names = std::move(channel_list);
  return out;
}

std::vector<TokenSequence> load_fasta(std::string_view text,
                                      const std::string& source_name,
                                      std::shared_ptr<const Vocabulary> vocabulary) {
  const auto lines = split_lines(text);
  std::vector<TokenSequence> records;
  bool in_record = false;
  std::string name;
  std::string residues;

  auto flush = [&]() {
    if (!in_record) return;
    if (residues.empty()) {
      throw Error(Errc::empty_record, source_name + ": record '" + name + "' has no sequence");
    }
    TokenSequence seq;
    seq.source = {source_name, 0};
    seq.name = name;
    seq.vocabulary = vocabulary;
    seq.tokens.reserve(residues.size());
    for (char ch : residues) {
      seq.tokens.push_back(vocabulary->lookup(
          static_cast<char>(std::toupper(static_cast<unsigned char>(ch)))));
    }
    records.push_back(std::move(seq));
    residues.clear();
  };

  for (auto line : lines) {
    if (!line.empty() && line[0] == '>') {
      flush();
      in_record = true;
      name = trim(std::string(line.substr(1)));
      continue;
    }
    if (!in_record) {
      if (trim(std::string(line)).empty()) continue;
      throw Error(Errc::no_records, source_name + ": sequence data before first '>' header");
    }
    for (char ch : line) {
      if (!std::isspace(static_cast<unsigned char>(ch))) residues.push_back(ch);
    }
  }
  flush();

  if (records.empty()) throw Error(Errc::no_records, source_name + ": no FASTA records");
  return records;
}

std::string write_csv_wide(const TimeSeries& series,
                           const std::vector<std::string>& channel_names) {
  const std::size_t t = series.length();
  const std::size_t c = series.channels();
  std::ostringstream out;
  out << "timestamp";
  for (std::size_t j = 0; j < c; ++j) {
    if (j < channel_names.size()) {
      out << ',' << channel_names[j];
    } else {
      out << ",c" << j;
    }
  }
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < t; ++i) {
    out << series.timestamps[i];
    for (std::size_t j = 0; j < c; ++j) {
      out << ',';
      if (series.observed.at(i, j)) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), series.values.at(i, j));
        out.write(buf, ptr - buf);
      }
    }
    out << '\n';
  }
  return out.str();
}

Corpus build_corpus(std::vector<NamedSource> sources) {
  if (sources.empty()) throw Error(Errc::empty_corpus, "corpus needs at least one source");

  std::sort(sources.begin(), sources.end(),
            [](const NamedSource& a, const NamedSource& b) { return a.name < b.name; });
  for (std::size_t i = 1; i < sources.size(); ++i) {
    if (sources[i].name == sources[i - 1].name) {
      throw Error(Errc::duplicate_source_name, "source '" + sources[i].name + "' appears twice");
    }
  }

  Corpus corpus;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    SourceId id{sources[i].name, i};
    std::visit(
        [&](auto& data) {
          using T = std::decay_t<decltype(data)>;
          if constexpr (std::is_same_v<T, TimeSeries>) {
            data.source = id;
          } else {
            for (auto& seq : data) seq.source = id;
          }
        },
        sources[i].data);
    corpus.sources.push_back(std::move(sources[i].data));
    corpus.names.push_back(sources[i].name);
    corpus.channel_names.push_back(std::move(sources[i].channel_names));
  }
  return corpus;
}

}  // namespace csp::ingest
