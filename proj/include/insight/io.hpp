#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "insight/acquisition.hpp"
#include "insight/config.hpp"
#include "insight/experiment.hpp"
#include "insight/selection.hpp"

namespace insight {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Shortest decimal that parses back to the same double.
std::string format_real(double value);

// ExperimentLog CSV:
// step,mean_true_rate,belief_rmse,effective_batch_fraction,rollouts_consumed,selected_ids
// with selected ids joined by ';'.
void write_log_csv(const ExperimentLog& log, std::ostream& out);
// JSON header block: artifact, version, seed, config_digest, config.
void write_log_header(const ExperimentConfig& cfg, const ExperimentLog& log, std::ostream& out);

// item_id,alpha,beta,mean,evidence,entropy,mi,weight,wmi
void write_score_table(const std::vector<ScoreRow>& rows, std::ostream& out);
// phi_bar,evidence,alpha,beta,delta_v,mi,weight,wmi
void write_grid_table(const std::vector<GridRow>& rows, std::ostream& out);

inline constexpr int kCheckpointSchemaVersion = 1;

struct CheckpointItem {
  ItemId id = 0;
  double alpha = 1, beta = 1, alpha0 = 1, beta0 = 1;
  friend bool operator==(const CheckpointItem&, const CheckpointItem&) = default;
};

struct BeliefCheckpoint {
  int schema_version = kCheckpointSchemaVersion;
  std::uint64_t step = 0;
  std::string config_digest;
  std::vector<CheckpointItem> items;
  friend bool operator==(const BeliefCheckpoint&, const BeliefCheckpoint&) = default;
};

class CheckpointError : public std::runtime_error {
 public:
  enum class Kind { kIo, kChecksum, kVersionMismatch, kFormat };
  CheckpointError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

BeliefCheckpoint make_checkpoint(const ItemPool& pool, std::uint64_t step,
                                 std::string config_digest);
// Throws CheckpointError(kFormat) if a record is not a valid belief.
ItemPool pool_from_checkpoint(const BeliefCheckpoint& checkpoint);

// File layout: one line of JSON, then a line "fnv1a64:<16 hex digits>" with
// the checksum of the JSON line's bytes. Reals are written as shortest
// round-trip decimals. Saving goes through a temporary file and a rename so a
// reader never sees a partial checkpoint.
std::string serialize_checkpoint(const BeliefCheckpoint& checkpoint);
BeliefCheckpoint parse_checkpoint(const std::string& bytes);
void save_checkpoint(const BeliefCheckpoint& checkpoint, const std::filesystem::path& path);
BeliefCheckpoint load_checkpoint(const std::filesystem::path& path);

// Writes text to path, replacing it atomically.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace insight
