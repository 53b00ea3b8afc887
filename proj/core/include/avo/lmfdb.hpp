#pragma once

#include <stdexcept>
#include <string>
#include <vector>

// Optional LMFDB ingestion: fetches a hyperelliptic-curve record over HTTPS
// from the public API, or reads a bundled offline fixture. Only y^2 = f(x)
// models (h = 0) are accepted.

namespace avo::lmfdb {

struct LmfdbCurveRecord {
  std::string label;
  int genus = 0;
  std::vector<long long> f;  // f[i] = coefficient of x^i
};

struct MalformedLabelError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnknownLabelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NetworkError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FetchOptions {
  bool offline = false;        // never open a connection; fixtures only
  std::string fixture_dir;     // defaults to AVORDERS_LMFDB_FIXTURES, then the bundled dir
  std::string host = "www.lmfdb.org";
};

bool label_well_formed(const std::string& label);

// Parses an /api/g2c_curves- or /api/ec_curvedata-shaped JSON body.
LmfdbCurveRecord parse_api_json(const std::string& body, const std::string& label);

LmfdbCurveRecord fetch_curve(const std::string& label, const FetchOptions& opt = {});

FetchOptions options_from_env();

}  // namespace avo::lmfdb
