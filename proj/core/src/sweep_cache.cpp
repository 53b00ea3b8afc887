#include <fstream>
#include <sstream>
#include <stdexcept>

#include "avo/curves.hpp"
#include "json.hpp"

namespace avo::curves {

std::string record_to_json(const std::string& label, const FrobeniusRecord& r) {
  // hand-assembled so the byte layout is stable across library versions
  std::ostringstream os;
  os << "{\"curve\":\"" << label << "\",\"p\":" << r.p << ",\"counts\":[";
  for (size_t i = 0; i < r.counts.size(); ++i) {
    if (i) os << ',';
    os << r.counts[i];
  }
  os << "],\"a\":[";
  for (size_t i = 0; i < r.a.size(); ++i) {
    if (i) os << ',';
    os << r.a[i];
  }
  os << "],\"order\":\"" << arith::u128_to_string(r.order) << "\"}";
  return os.str();
}

void append_records(const std::string& path, const std::string& label,
                    const std::vector<FrobeniusRecord>& recs) {
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw std::runtime_error("cannot open cache file for append: " + path);
  for (const auto& r : recs) out << record_to_json(label, r) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("write failure on cache file: " + path);
}

SweepCache load_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open cache file: " + path);
  SweepCache cache;
  std::string line;
  u64 last_p = 0;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    FrobeniusRecord r;
    std::string label = j.at("curve").get<std::string>();
    if (cache.label.empty())
      cache.label = label;
    else if (cache.label != label)
      throw std::runtime_error(path + ": mixed curve labels in cache (line " +
                               std::to_string(line_no) + ")");
    r.p = j.at("p").get<u64>();
    r.counts = j.at("counts").get<std::vector<u64>>();
    r.a = j.at("a").get<std::vector<long long>>();
    r.order = arith::u128_from_string(j.at("order").get<std::string>());
    if (r.p <= last_p)
      throw std::runtime_error(path + ": records not strictly increasing in p (line " +
                               std::to_string(line_no) + ")");
    last_p = r.p;
    cache.records.push_back(std::move(r));
  }
  cache.x_max = last_p;
  return cache;
}

HyperellipticCurve load_curve_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open curve file: " + path);
  nlohmann::json j;
  in >> j;
  return make_curve(j.at("label").get<std::string>(), j.at("genus").get<int>(),
                    j.at("f").get<std::vector<long long>>());
}

}  // namespace avo::curves
