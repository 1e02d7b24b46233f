#include "ca/error.hpp"

namespace ca {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "E_PARSE";
    case ErrorCode::NotHomogeneous: return "E_NOT_HOMOGENEOUS";
    case ErrorCode::DegreeLimit: return "E_DEGREE_LIMIT";
    case ErrorCode::ZeroModule: return "E_ZERO_MODULE";
    case ErrorCode::PdCutoff: return "E_PD_CUTOFF";
    case ErrorCode::NotSop: return "E_NOT_SOP";
    case ErrorCode::InfiniteIntersection: return "E_INFINITE_INTERSECTION";
    case ErrorCode::NotAComplex: return "E_NOT_A_COMPLEX";
    case ErrorCode::TriesExhausted: return "E_TRIES_EXHAUSTED";
    case ErrorCode::DimMismatch: return "E_DIM_MISMATCH";
    case ErrorCode::UnknownCheck: return "E_UNKNOWN_CHECK";
    case ErrorCode::NotEquidim: return "E_NOT_EQUIDIM";
    case ErrorCode::InvalidArgument: return "E_INVALID_ARGUMENT";
  }
  return "E_UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code),
      detail_(message) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace ca
