#include "chronosparse/errors.hpp"

namespace csp {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::non_monotonic_timestamps: return "NonMonotonicTimestamps";
    case Errc::shape_mismatch: return "ShapeMismatch";
    case Errc::empty_series: return "EmptySeries";
    case Errc::duplicate_timestamp: return "DuplicateTimestamp";
    case Errc::empty_file: return "EmptyFile";
    case Errc::header_missing: return "HeaderMissing";
    case Errc::duplicate_cell: return "DuplicateCell";
    case Errc::empty_record: return "EmptyRecord";
    case Errc::no_records: return "NoRecords";
    case Errc::duplicate_source_name: return "DuplicateSourceName";
    case Errc::empty_corpus: return "EmptyCorpus";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::empty_batch: return "EmptyBatch";
    case Errc::channel_mismatch: return "ChannelMismatch";
    case Errc::no_series: return "NoSeries";
    case Errc::invalid_rate: return "InvalidRate";
    case Errc::no_evaluable_points: return "NoEvaluablePoints";
    case Errc::kind_mismatch: return "KindMismatch";
    case Errc::shape_error: return "ShapeError";
    case Errc::unknown_op: return "UnknownOp";
    case Errc::non_scalar_loss: return "NonScalarLoss";
    case Errc::no_observed_history: return "NoObservedHistory";
    case Errc::lookback_shorter_than_period: return "LookbackShorterThanPeriod";
    case Errc::even_kernel: return "EvenKernel";
    case Errc::param_shape_mismatch: return "ParamShapeMismatch";
    case Errc::batch_shape_mismatch: return "BatchShapeMismatch";
    case Errc::empty_train_set: return "EmptyTrainSet";
    case Errc::bad_magic: return "BadMagic";
    case Errc::unsupported_version: return "UnsupportedVersion";
    case Errc::corrupt_payload: return "CorruptPayload";
    case Errc::split_too_small: return "SplitTooSmall";
    case Errc::config_invalid: return "ConfigInvalid";
    case Errc::io_error: return "IoError";
  }
  return "UnknownError";
}

}  // namespace csp
