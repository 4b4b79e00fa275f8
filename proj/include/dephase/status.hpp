#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dephase {

// Numerical outcomes that are legitimate results rather than failures.
enum class Status {
    ok,
    complete_dephasing,  // a mode's coherence factor reached zero
    singular_schedule,   // pulsed memory factor has a vanishing denominator
    undefined_ratio,     // delta requested where the free coherence is zero
};

std::string_view to_string(Status s);

template <class T>
struct Outcome {
    T value{};
    Status status = Status::ok;

    bool ok() const { return status == Status::ok; }
};

// First non-ok status wins.
inline Status combine(Status a, Status b) { return a != Status::ok ? a : b; }

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error {
    using Error::Error;
};

struct DegeneratePreparation : Error {
    using Error::Error;
};

// Initial coherence is exactly zero; its time evolution is trivially zero.
struct DegenerateCoherence : Error {
    using Error::Error;
};

struct NoCrossover : Error {
    using Error::Error;
};

struct SizeError : Error {
    using Error::Error;
};

}  // namespace dephase
