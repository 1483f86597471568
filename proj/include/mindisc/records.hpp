#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mindisc {

/// One row of a rate or pathology study.  Slope summary rows reuse the
/// schema with n = 0 and the fitted slope in aux.
struct ExperimentRecord {
  std::string experiment;
  std::string method;  // mc_uniform | opt_weights | greedy | thinned | bbis
  std::string kernel;  // serialised kernel fragment
  std::string target;  // serialised target fragment
  long n = 0;
  std::optional<double> c;  // pathology studies only
  std::uint64_t seed = 0;
  double value = 0.0;  // discrepancy (MMD or KSD), >= 0
  std::string aux;     // jitter=..., failed, slope=...

  bool failed() const { return aux == "failed"; }
  /// Parses "key=v" or "key=v;key2=v2" aux entries; empty if absent.
  std::optional<double> aux_value(const std::string& key) const;
};

std::string record_csv_header();
std::string to_csv_row(const ExperimentRecord& record);
ExperimentRecord parse_record(const std::string& csv_row);

void write_records_csv(const std::string& path,
                       const std::vector<std::pair<std::string, std::string>>& config_echo,
                       const std::vector<ExperimentRecord>& records);

struct RecordsFile {
  std::vector<std::string> comments;
  std::vector<ExperimentRecord> records;
};
RecordsFile read_records_csv(const std::string& path);

/// Resolution order: defaults, then config file entries, then flags.
class Config {
 public:
  void set_default(const std::string& key, const std::string& value);
  void load_file(const std::string& path);  // plain-text key=value lines
  void set_flag(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  std::string get(const std::string& key) const;
  double get_double(const std::string& key) const;
  long get_long(const std::string& key) const;

  /// Sorted key=value pairs, echoed as comment lines into output CSVs.
  std::vector<std::pair<std::string, std::string>> items() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace mindisc
