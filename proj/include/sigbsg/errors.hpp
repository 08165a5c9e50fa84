// Copyright 2026 The sigbsg Authors.
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

#ifndef SIGBSG_ERRORS_HPP_
#define SIGBSG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace sigbsg {

// Malformed input: bad game documents, invalid commitments, bad indices.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what)
      : std::invalid_argument(what) {}
};

// A numerical routine failed (LP status, enumeration cap, broken invariant).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sigbsg

#endif  // SIGBSG_ERRORS_HPP_
