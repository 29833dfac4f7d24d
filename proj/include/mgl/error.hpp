#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mgl {

// Every failure carries a machine-readable kind plus a human detail string.
// The CLI prints these as `ERROR <kind>: <detail>`.
class Error : public std::runtime_error {
public:
  Error(std::string kind, std::string detail)
      : std::runtime_error(kind + ": " + detail),
        kind_(std::move(kind)),
        detail_(std::move(detail)) {}

  const std::string& kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

private:
  std::string kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& detail) {
  throw Error(kind, detail);
}

}  // namespace mgl
