#ifndef VOACERT_ERRORS_HPP
#define VOACERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace voacert {

/** Error: base class for all engine failures. */
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/** TruncatedError: a coefficient outside the certified window was requested. */
struct TruncatedError : Error {
    explicit TruncatedError(const std::string& msg) : Error("Truncated: " + msg) {}
};

/** IntegralUndefinedError: formal integration hit an exponent with no antiderivative. */
struct IntegralUndefinedError : Error {
    explicit IntegralUndefinedError(const std::string& msg) : Error("IntegralUndefined: " + msg) {}
};

/** NonIntegralPairingError: a lattice vertex operator needs an integer pairing and did not get one. */
struct NonIntegralPairingError : Error {
    explicit NonIntegralPairingError(const std::string& msg) : Error("NonIntegralPairing: " + msg) {}
};

/** IrrationalSpectrumError: an operator's characteristic polynomial has non-rational roots. */
struct IrrationalSpectrumError : Error {
    explicit IrrationalSpectrumError(const std::string& msg) : Error("IrrationalSpectrum: " + msg) {}
};

/** NotNilpotentError: a matrix expected to be nilpotent is not. */
struct NotNilpotentError : Error {
    explicit NotNilpotentError(const std::string& msg) : Error("NotNilpotent: " + msg) {}
};

/** NotProportionalError: a vector expected to be a vacuum multiple is not. */
struct NotProportionalError : Error {
    explicit NotProportionalError(const std::string& msg) : Error("NotProportional: " + msg) {}
};

/** RequiresFiniteOrderError: a finite-order-only check was asked about a log-twisted operator. */
struct RequiresFiniteOrderError : Error {
    explicit RequiresFiniteOrderError(const std::string& msg) : Error("RequiresFiniteOrder: " + msg) {}
};

/** DivisionByTauError: inversion of a scalar with a nonzero tau part. */
struct DivisionByTauError : Error {
    explicit DivisionByTauError(const std::string& msg) : Error("DivisionByTau: " + msg) {}
};

/** GeneratorAbsentError: the requested screening current is not part of this algebra variant. */
struct GeneratorAbsentError : Error {
    explicit GeneratorAbsentError(const std::string& msg) : Error("GeneratorAbsent: " + msg) {}
};

/** CalibrationError: a construction-time consistency assertion failed. */
struct CalibrationError : Error {
    explicit CalibrationError(const std::string& msg) : Error("Calibration: " + msg) {}
};

/** UsageError: invalid configuration or command-line input (CLI exit code 2). */
struct UsageError : Error {
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

}  // namespace voacert

#endif
