// Copyright 2026 The qskc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSKC_ERROR_HPP
#define QSKC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qskc {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An operation that a representation does not provide.
/// The message names the cell of the tractability map it corresponds to.
class Unsupported : public Error {
   public:
    using Error::Error;
};

/// A node store grew past its configured node budget.
class BudgetExceeded : public Error {
   public:
    using Error::Error;
};

/// Malformed textual input (circuits, matrices, serialized states, graphs).
class ParseError : public Error {
   public:
    using Error::Error;
};

inline void require(bool cond, const std::string &what) {
    if (!cond) {
        throw std::invalid_argument(what);
    }
}

inline void require_parse(bool cond, const std::string &what) {
    if (!cond) {
        throw ParseError(what);
    }
}

}  // namespace qskc

#endif
