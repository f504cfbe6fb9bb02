#pragma once

#include <doctest.h>

#include "boundrank/error.hpp"
#include "boundrank/matrix.hpp"

#define CHECK_ERROR_CODE(expr, expected)                  \
  do {                                                    \
    bool thrown_ = false;                                 \
    try {                                                 \
      (void)(expr);                                       \
    } catch (const boundrank::Error& e_) {                \
      thrown_ = true;                                     \
      CHECK(e_.code() == boundrank::ErrorCode::expected); \
    }                                                     \
    CHECK_MESSAGE(thrown_, "expected " #expected);        \
  } while (0)

namespace testutil {

inline boundrank::Matrix M(const char* field, const std::vector<std::vector<int>>& rows) {
  return boundrank::Matrix::from_ints(boundrank::Field::parse(field), rows);
}

}  // namespace testutil
