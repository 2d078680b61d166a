#pragma once
// Error taxonomy shared across the library: malformed data (validation)
// versus structurally unsupported requests.  The CLI maps ValidationError to
// exit code 2 and everything else reportable to exit code 1.

#include <stdexcept>
#include <string>

namespace lam {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lam
