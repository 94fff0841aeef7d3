#include "insight/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace insight {

using nlohmann::json;

std::string format_real(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_log_csv(const ExperimentLog& log, std::ostream& out) {
  out << "step,mean_true_rate,belief_rmse,effective_batch_fraction,rollouts_consumed,selected_ids\n";
  for (const auto& row : log.rows) {
    out << row.step << ',' << format_real(row.mean_true_rate) << ','
        << format_real(row.belief_rmse) << ',' << format_real(row.effective_batch_fraction) << ','
        << row.rollouts_consumed << ',';
    for (std::size_t i = 0; i < row.selected.size(); ++i) {
      if (i > 0) out << ';';
      out << row.selected[i];
    }
    out << '\n';
  }
}

void write_log_header(const ExperimentConfig& cfg, const ExperimentLog& log, std::ostream& out) {
  nlohmann::ordered_json j;
  j["artifact"] = "insight";
  j["version"] = kArtifactVersion;
  j["seed"] = log.seed;
  j["config_digest"] = log.config_digest;
  j["config"] = json::parse(canonical_json(cfg));
  out << j.dump(2) << '\n';
}

void write_score_table(const std::vector<ScoreRow>& rows, std::ostream& out) {
  out << "item_id,alpha,beta,mean,evidence,entropy,mi,weight,wmi\n";
  for (const auto& r : rows) {
    out << r.id << ',' << format_real(r.alpha) << ',' << format_real(r.beta) << ','
        << format_real(r.mean) << ',' << format_real(r.evidence) << ',' << format_real(r.entropy)
        << ',' << format_real(r.mi) << ',' << format_real(r.weight) << ',' << format_real(r.wmi)
        << '\n';
  }
}

void write_grid_table(const std::vector<GridRow>& rows, std::ostream& out) {
  out << "phi_bar,evidence,alpha,beta,delta_v,mi,weight,wmi\n";
  for (const auto& r : rows) {
    out << format_real(r.phi_bar) << ',' << format_real(r.evidence) << ',' << format_real(r.alpha)
        << ',' << format_real(r.beta) << ',' << format_real(r.delta_v) << ',' << format_real(r.mi)
        << ',' << format_real(r.weight) << ',' << format_real(r.wmi) << '\n';
  }
}

BeliefCheckpoint make_checkpoint(const ItemPool& pool, std::uint64_t step,
                                 std::string config_digest) {
  BeliefCheckpoint ckpt;
  ckpt.step = step;
  ckpt.config_digest = std::move(config_digest);
  ckpt.items.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const BetaBelief& b = pool.beliefs()[i];
    ckpt.items.push_back({pool.ids()[i], b.alpha(), b.beta(), b.alpha0(), b.beta0()});
  }
  return ckpt;
}

ItemPool pool_from_checkpoint(const BeliefCheckpoint& checkpoint) {
  ItemPool pool;
  try {
    for (const auto& item : checkpoint.items) {
      pool.add(item.id, BetaBelief(item.alpha, item.beta, item.alpha0, item.beta0));
    }
  } catch (const std::exception& e) {
    throw CheckpointError(CheckpointError::Kind::kFormat, std::string("checkpoint: ") + e.what());
  }
  return pool;
}

std::string serialize_checkpoint(const BeliefCheckpoint& checkpoint) {
  nlohmann::ordered_json j;
  j["format"] = "insight-belief-checkpoint";
  j["schema_version"] = checkpoint.schema_version;
  j["step"] = checkpoint.step;
  j["config_digest"] = checkpoint.config_digest;
  auto items = nlohmann::ordered_json::array();
  for (const auto& it : checkpoint.items) {
    items.push_back({it.id, it.alpha, it.beta, it.alpha0, it.beta0});
  }
  j["items"] = std::move(items);
  const std::string body = j.dump();
  return body + "\nfnv1a64:" + hex64(fnv1a64(body)) + "\n";
}

BeliefCheckpoint parse_checkpoint(const std::string& bytes) {
  using Kind = CheckpointError::Kind;
  const std::size_t body_end = bytes.find('\n');
  if (body_end == std::string::npos) {
    throw CheckpointError(Kind::kChecksum, "checkpoint: missing checksum line (truncated file?)");
  }
  const std::string body = bytes.substr(0, body_end);
  const std::string trailer = bytes.substr(body_end + 1);
  const std::string expected = "fnv1a64:" + hex64(fnv1a64(body)) + "\n";
  if (trailer != expected) {
    throw CheckpointError(Kind::kChecksum, "checkpoint: checksum mismatch (corrupt or truncated)");
  }

  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw CheckpointError(Kind::kFormat, std::string("checkpoint: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "insight-belief-checkpoint") {
      throw CheckpointError(Kind::kFormat, "checkpoint: not a belief checkpoint");
    }
    const int version = j.at("schema_version").get<int>();
    if (version != kCheckpointSchemaVersion) {
      throw CheckpointError(Kind::kVersionMismatch,
                            "checkpoint: schema version " + std::to_string(version) +
                                " is not supported (expected " +
                                std::to_string(kCheckpointSchemaVersion) + ")");
    }
    BeliefCheckpoint ckpt;
    ckpt.schema_version = version;
    ckpt.step = j.at("step").get<std::uint64_t>();
    ckpt.config_digest = j.at("config_digest").get<std::string>();
    for (const json& rec : j.at("items")) {
      if (!rec.is_array() || rec.size() != 5) {
        throw CheckpointError(Kind::kFormat, "checkpoint: item records must have 5 fields");
      }
      ckpt.items.push_back({rec[0].get<ItemId>(), rec[1].get<double>(), rec[2].get<double>(),
                            rec[3].get<double>(), rec[4].get<double>()});
    }
    return ckpt;
  } catch (const json::exception& e) {
    throw CheckpointError(Kind::kFormat, std::string("checkpoint: ") + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void save_checkpoint(const BeliefCheckpoint& checkpoint, const std::filesystem::path& path) {
  try {
    write_file_atomic(path, serialize_checkpoint(checkpoint));
  } catch (const std::exception& e) {
    throw CheckpointError(CheckpointError::Kind::kIo, std::string("checkpoint: ") + e.what());
  }
}

BeliefCheckpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CheckpointError(CheckpointError::Kind::kIo, "checkpoint: cannot read " + path.string());
  }
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return parse_checkpoint(bytes.str());
}

}  // namespace insight
