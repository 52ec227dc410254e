#pragma once

#include <stdexcept>
#include <string>

namespace csp {

// Every failure mode the library can report. The CLI maps these onto
// exit codes (config / data / runtime), tests match on them directly.
enum class Errc {
  // core
  non_monotonic_timestamps,
  shape_mismatch,
  empty_series,
  // ingest
  duplicate_timestamp,
  empty_file,
  header_missing,
  duplicate_cell,
  empty_record,
  no_records,
  duplicate_source_name,
  empty_corpus,
  // pipeline
  index_out_of_range,
  empty_batch,
  channel_mismatch,
  no_series,
  invalid_rate,
  // metrics
  no_evaluable_points,
  kind_mismatch,
  // autodiff
  shape_error,
  unknown_op,
  non_scalar_loss,
  // models
  no_observed_history,
  lookback_shorter_than_period,
  even_kernel,
  param_shape_mismatch,
  batch_shape_mismatch,
  // train
  empty_train_set,
  bad_magic,
  unsupported_version,
  corrupt_payload,
  // runner
  split_too_small,
  config_invalid,
  io_error,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace csp
