#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vilenkin/rational.hpp"

namespace vilenkin {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kArtifactName = "vilenkin";
inline constexpr const char* kArtifactVersion = "0.3.0";

/// One named check. Exact quantities are kept as "numerator/denominator"
/// strings; floating quantities always travel with an error bound.
class Record {
 public:
  Record(std::string name, std::string anchor) : name_(std::move(name)), anchor_(std::move(anchor)) {}

  Record& pass(bool ok) {
    passed_ = ok;
    return *this;
  }
  Record& exact(const std::string& key, const Rational& value);
  Record& approx(const std::string& key, double value, double err);
  Record& info(const std::string& key, nlohmann::ordered_json value);

  const std::string& name() const { return name_; }
  bool passed() const { return passed_; }

  nlohmann::ordered_json to_json() const;
  void append_csv(std::ostream& os) const;

 private:
  std::string name_;
  std::string anchor_;
  bool passed_ = true;
  nlohmann::ordered_json exact_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json approx_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json info_ = nlohmann::ordered_json::object();
};

class Report {
 public:
  Report(std::string command, nlohmann::ordered_json config)
      : command_(std::move(command)), config_(std::move(config)) {}

  Record& add(std::string name, std::string anchor) {
    records_.emplace_back(std::move(name), std::move(anchor));
    return records_.back();
  }

  const std::vector<Record>& records() const { return records_; }
  bool all_passed() const;

  /// Wall time is the only field allowed to differ between identical runs;
  /// a negative value omits it.
  void set_wall_time(double seconds) { wall_time_ = seconds; }

  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;

 private:
  std::string command_;
  nlohmann::ordered_json config_;
  std::vector<Record> records_;
  double wall_time_ = -1.0;
};

}  // namespace vilenkin
