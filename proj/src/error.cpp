#include "boundrank/error.hpp"

namespace boundrank {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::InvalidIndexSet: return "InvalidIndexSet";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::NotAlternating: return "NotAlternating";
    case ErrorCode::NotSupported: return "NotSupported";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Error";
}

}  // namespace boundrank
