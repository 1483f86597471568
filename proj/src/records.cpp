#include "mindisc/records.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mindisc {

namespace {

std::string format_double(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) cells.push_back(cell);
  if (!line.empty() && line.back() == sep) cells.push_back("");
  return cells;
}

}  // namespace

std::optional<double> ExperimentRecord::aux_value(const std::string& key) const {
  for (const std::string& part : split(aux, ';')) {
    const auto eq = part.find('=');
    if (eq != std::string::npos && part.substr(0, eq) == key)
      return std::stod(part.substr(eq + 1));
  }
  return std::nullopt;
}

std::string record_csv_header() { return "experiment,method,kernel,target,n,c,seed,value,aux"; }

std::string to_csv_row(const ExperimentRecord& r) {
  std::ostringstream out;
  out << r.experiment << ',' << r.method << ',' << r.kernel << ',' << r.target << ',' << r.n
      << ',' << (r.c ? format_double(*r.c) : "") << ',' << r.seed << ','
      << format_double(r.value) << ',' << r.aux;
  return out.str();
}

ExperimentRecord parse_record(const std::string& csv_row) {
  const auto cells = split(csv_row, ',');
  if (cells.size() != 9)
    throw std::invalid_argument("parse_record: expected 9 fields, got row '" + csv_row + "'");
  ExperimentRecord r;
  r.experiment = cells[0];
  r.method = cells[1];
  r.kernel = cells[2];
  r.target = cells[3];
  r.n = std::stol(cells[4]);
  if (!cells[5].empty()) r.c = std::stod(cells[5]);
  r.seed = std::stoull(cells[6]);
  r.value = std::stod(cells[7]);
  r.aux = cells[8];
  if (!(r.value >= 0.0)) throw std::invalid_argument("parse_record: value must be >= 0");
  return r;
}

void write_records_csv(const std::string& path,
                       const std::vector<std::pair<std::string, std::string>>& config_echo,
                       const std::vector<ExperimentRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("write_records_csv: cannot open " + path);
  for (const auto& [key, value] : config_echo) out << "# " << key << "=" << value << "\n";
  out << record_csv_header() << "\n";
  for (const auto& record : records) out << to_csv_row(record) << "\n";
}

RecordsFile read_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("read_records_csv: cannot open " + path);
  RecordsFile file;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      file.comments.push_back(line);
      continue;
    }
    if (!header_seen) {
      if (line != record_csv_header())
        throw std::invalid_argument("read_records_csv: unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    file.records.push_back(parse_record(line));
  }
  return file;
}

void Config::set_default(const std::string& key, const std::string& value) {
  values_.emplace(key, value);  // does not overwrite
}

void Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key=value, got '" + line + "'");
    values_[line.substr(0, eq)] = line.substr(eq + 1);
  }
}

void Config::set_flag(const std::string& key, const std::string& value) { values_[key] = value; }

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw std::invalid_argument("config: missing key '" + key + "'");
  return it->second;
}

double Config::get_double(const std::string& key) const {
  try {
    return std::stod(get(key));
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key '" + key + "' is not a number");
  }
}

long Config::get_long(const std::string& key) const {
  try {
    return std::stol(get(key));
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key '" + key + "' is not an integer");
  }
}

std::vector<std::pair<std::string, std::string>> Config::items() const {
  return {values_.begin(), values_.end()};
}

}  // namespace mindisc
