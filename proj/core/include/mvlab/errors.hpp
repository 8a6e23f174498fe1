#pragma once

#include <stdexcept>
#include <string>

namespace mvlab {

// Base class for everything thrown by the library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A market/model specification violates its invariants (sigma <= 0, X0 <= 0, ...).
class invalid_spec_error : public error {
public:
    using error::error;
};

// Bad input data (non-positive price, retrograde date, series too short, ...).
// Carries the offending zero-based index when one exists.
class data_error : public error {
public:
    data_error(const std::string& what, long index = -1) : error(what), index_(index) {}
    long index() const { return index_; }

private:
    long index_;
};

// An estimation window (or the mirror window) reaches outside available history.
class window_error : public error {
public:
    using error::error;
};

// A metric is undefined for the given sample (too small, zero variance, zero wealth).
class metric_error : public error {
public:
    using error::error;
};

}  // namespace mvlab
