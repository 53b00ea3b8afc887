#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "avo/lmfdb.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "json.hpp"

#ifndef AVORDERS_BUNDLED_FIXTURES
#define AVORDERS_BUNDLED_FIXTURES ""
#endif

namespace avo::lmfdb {

bool label_well_formed(const std::string& label) {
  if (label.empty() || label.size() > 64) return false;
  bool has_alnum = false;
  for (char ch : label) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      has_alnum = true;
      continue;
    }
    if (ch == '.' || ch == '-' || ch == '_') continue;
    return false;
  }
  return has_alnum;
}

namespace {

std::vector<long long> coeff_list(const nlohmann::json& j) {
  std::vector<long long> out;
  for (const auto& v : j) out.push_back(v.get<long long>());
  return out;
}

}  // namespace

LmfdbCurveRecord parse_api_json(const std::string& body, const std::string& label) {
  nlohmann::json j = nlohmann::json::parse(body);
  if (!j.contains("data") || !j["data"].is_array() || j["data"].empty())
    throw UnknownLabelError("LMFDB returned no record for label " + label);
  const nlohmann::json& rec = j["data"][0];

  LmfdbCurveRecord out;
  out.label = rec.value("label", label);
  if (rec.contains("g"))
    out.genus = rec["g"].get<int>();
  else if (rec.contains("genus"))
    out.genus = rec["genus"].get<int>();
  else
    throw UnknownLabelError("LMFDB record for " + label + " carries no genus field");

  if (!rec.contains("eqn"))
    throw UnknownLabelError("LMFDB record for " + label + " carries no eqn field");
  nlohmann::json eqn = rec["eqn"];
  if (eqn.is_string()) eqn = nlohmann::json::parse(eqn.get<std::string>());
  if (!eqn.is_array() || eqn.size() != 2)
    throw UnsupportedModelError("LMFDB eqn for " + label + " is not a [f, h] pair");
  std::vector<long long> f = coeff_list(eqn[0]);
  std::vector<long long> h = coeff_list(eqn[1]);
  for (long long hc : h) {
    if (hc != 0)
      throw UnsupportedModelError("curve " + label +
                                  " has h(x) != 0; only y^2 = f(x) models are supported");
  }
  while (!f.empty() && f.back() == 0) f.pop_back();
  if (f.empty()) throw UnsupportedModelError("curve " + label + " has zero f(x)");
  out.f = std::move(f);
  return out;
}

FetchOptions options_from_env() {
  FetchOptions opt;
  if (const char* off = std::getenv("AVORDERS_OFFLINE")) {
    std::string v(off);
    opt.offline = v == "1" || v == "true" || v == "yes";
  }
  if (const char* dir = std::getenv("AVORDERS_LMFDB_FIXTURES")) opt.fixture_dir = dir;
  return opt;
}

namespace {

std::string fixture_path(const FetchOptions& opt, const std::string& label) {
  std::string dir = opt.fixture_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("AVORDERS_LMFDB_FIXTURES")) dir = env;
  }
  if (dir.empty()) dir = AVORDERS_BUNDLED_FIXTURES;
  if (dir.empty()) return {};
  return dir + "/" + label + ".json";
}

LmfdbCurveRecord fetch_fixture(const FetchOptions& opt, const std::string& label) {
  std::string path = fixture_path(opt, label);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnknownLabelError("no offline fixture for label " + label);
  std::ostringstream body;
  body << in.rdbuf();
  return parse_api_json(body.str(), label);
}

}  // namespace

LmfdbCurveRecord fetch_curve(const std::string& label, const FetchOptions& opt) {
  if (!label_well_formed(label)) throw MalformedLabelError("malformed LMFDB label: " + label);
  if (opt.offline) return fetch_fixture(opt, label);

  httplib::SSLClient cli(opt.host);
  cli.set_connection_timeout(10);
  cli.set_read_timeout(30);
  cli.enable_server_certificate_verification(false);
  std::string path = "/api/g2c_curves/?label=" + label + "&_format=json";
  httplib::Result res = cli.Get(path);
  if (!res) {
    // connection failed; a bundled fixture still serves the label
    try {
      return fetch_fixture(opt, label);
    } catch (const UnknownLabelError&) {
      throw NetworkError("LMFDB unreachable and no fixture for label " + label);
    }
  }
  if (res->status == 404) throw UnknownLabelError("LMFDB has no record for label " + label);
  if (res->status != 200)
    throw NetworkError("LMFDB returned HTTP " + std::to_string(res->status) + " for " + label);
  return parse_api_json(res->body, label);
}

}  // namespace avo::lmfdb
