#include "phnet/error.hpp"

namespace phnet {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Defective: return "Defective";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::ExceptionalPoint: return "ExceptionalPoint";
    case ErrorKind::MalformedCoupling: return "MalformedCoupling";
    case ErrorKind::InvalidValue: return "InvalidValue";
    case ErrorKind::ComplexSpectrum: return "ComplexSpectrum";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::SpectralUnavailable: return "SpectralUnavailable";
    case ErrorKind::WrongShape: return "WrongShape";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ValueError: return "ValueError";
    case ErrorKind::EmptyData: return "EmptyData";
  }
  return "Unknown";
}

}  // namespace phnet
