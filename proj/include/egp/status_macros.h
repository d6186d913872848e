// Copyright 2026 The EGP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EGP_STATUS_MACROS_H_
#define EGP_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define EGP_STATUS_CONCAT_INNER_(x, y) x##y
#define EGP_STATUS_CONCAT_(x, y) EGP_STATUS_CONCAT_INNER_(x, y)

#define EGP_RETURN_IF_ERROR(expr)                 \
  do {                                            \
    const absl::Status egp_status_ = (expr);      \
    if (!egp_status_.ok()) return egp_status_;    \
  } while (0)

#define EGP_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                               \
  if (!statusor.ok()) return statusor.status();          \
  lhs = std::move(statusor).value()

// Evaluates `rexpr` (an absl::StatusOr<T>) and either assigns the value to
// `lhs` or returns the error from the enclosing function.
#define EGP_ASSIGN_OR_RETURN(lhs, rexpr) \
  EGP_ASSIGN_OR_RETURN_IMPL_(            \
      EGP_STATUS_CONCAT_(egp_statusor_, __LINE__), lhs, rexpr)

#endif  // EGP_STATUS_MACROS_H_
