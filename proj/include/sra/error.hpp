#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sra {

// Domain error with a stable machine-readable kind, surfaced as a JSON
// error object by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

namespace errors {
inline Error division_by_zero(const std::string& m) { return Error("division_by_zero", m); }
inline Error order_mismatch(const std::string& m) { return Error("order_mismatch", m); }
inline Error order_limit(const std::string& m) { return Error("order_limit", m); }
inline Error dimension_mismatch(const std::string& m) { return Error("dimension_mismatch", m); }
inline Error precondition(const std::string& m) { return Error("precondition", m); }
inline Error classification(const std::string& m) { return Error("classification", m); }
inline Error consistency(const std::string& m) { return Error("consistency", m); }
inline Error singular_system(const std::string& m) { return Error("singular_system", m); }
inline Error limit(const std::string& m) { return Error("limit", m); }
inline Error parse(const std::string& m) { return Error("parse", m); }
inline Error usage(const std::string& m) { return Error("usage", m); }
}  // namespace errors

}  // namespace sra
