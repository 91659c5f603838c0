#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace reslie {

enum class ErrorCode {
    DimensionMismatch,
    InclusionViolated,
    AdMismatch,
    NotDerivation,
    NotLieMorphism,
    NotRestrictedAction,
    NotRestrictedModule,
    DegreeOutOfRange,
    OrderUnsupported,
    UnsupportedCharacteristic,
    CochainInvariantViolated,
    ParseError,
};

const char* error_code_name(ErrorCode code);

struct Error {
    ErrorCode code;
    std::string message;
    int index = -1;  // offending basis index / column, when meaningful
};

/// Minimal value-or-error carrier (std::expected is C++23).
template <class T>
class Expected {
public:
    Expected(T value) : v_(std::move(value)) {}
    Expected(Error err) : v_(std::move(err)) {}

    bool has_value() const { return v_.index() == 0; }
    explicit operator bool() const { return has_value(); }

    T& value() {
        if (!has_value()) throw std::runtime_error(std::get<1>(v_).message);
        return std::get<0>(v_);
    }
    const T& value() const {
        if (!has_value()) throw std::runtime_error(std::get<1>(v_).message);
        return std::get<0>(v_);
    }
    T& operator*() { return value(); }
    const T& operator*() const { return value(); }
    T* operator->() { return &value(); }
    const T* operator->() const { return &value(); }

    const Error& error() const { return std::get<1>(v_); }

private:
    std::variant<T, Error> v_;
};

inline Error make_error(ErrorCode code, std::string message, int index = -1) {
    return Error{code, std::move(message), index};
}

}  // namespace reslie
