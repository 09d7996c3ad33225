#include "vilenkin/report.hpp"

#include <sstream>

namespace vilenkin {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string scalar_text(const nlohmann::ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

Record& Record::exact(const std::string& key, const Rational& value) {
  exact_[key] = value.to_string();
  return *this;
}

Record& Record::approx(const std::string& key, double value, double err) {
  approx_[key] = {{"value", value}, {"err", err}};
  return *this;
}

Record& Record::info(const std::string& key, nlohmann::ordered_json value) {
  info_[key] = std::move(value);
  return *this;
}

nlohmann::ordered_json Record::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name_;
  j["status"] = passed_ ? "pass" : "fail";
  j["anchor"] = anchor_;
  j["exact"] = exact_;
  j["approx"] = approx_;
  j["info"] = info_;
  return j;
}

void Record::append_csv(std::ostream& os) const {
  const std::string prefix =
      csv_field(name_) + "," + (passed_ ? "pass" : "fail") + "," + csv_field(anchor_) + ",";
  bool any = false;
  for (const auto& [key, value] : exact_.items()) {
    os << prefix << "exact," << csv_field(key) << "," << csv_field(value.get<std::string>()) << ",\n";
    any = true;
  }
  for (const auto& [key, value] : approx_.items()) {
    os << prefix << "approx," << csv_field(key) << "," << value["value"].dump() << "," << value["err"].dump() << "\n";
    any = true;
  }
  for (const auto& [key, value] : info_.items()) {
    os << prefix << "info," << csv_field(key) << "," << csv_field(scalar_text(value)) << ",\n";
    any = true;
  }
  if (!any) os << prefix << ",,,\n";
}

bool Report::all_passed() const {
  for (const auto& r : records_) {
    if (!r.passed()) return false;
  }
  return true;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["artifact"] = {{"name", kArtifactName}, {"version", kArtifactVersion}};
  j["command"] = command_;
  j["config"] = config_;
  auto records = nlohmann::ordered_json::array();
  std::size_t passed = 0;
  for (const auto& r : records_) {
    records.push_back(r.to_json());
    passed += r.passed();
  }
  j["records"] = std::move(records);
  j["summary"] = {{"passed", passed}, {"failed", records_.size() - passed}, {"all_passed", all_passed()}};
  if (wall_time_ >= 0.0) j["wall_time_s"] = wall_time_;
  return j;
}

std::string Report::to_csv() const {
  std::ostringstream os;
  os << "record,status,anchor,kind,field,value,err\n";
  for (const auto& r : records_) r.append_csv(os);
  return os.str();
}

}  // namespace vilenkin
