// SPDX-License-Identifier: Apache-2.0
//
// irspca: simulation of IRS-aided pilot contamination attacks and countermeasures
// Copyright (C) 2026 The irspca authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace irspca {

// Exit codes used by the command-line tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_numeric_error = 3;
inline constexpr int exit_io_error = 4;

// Invalid configuration, malformed input file or out-of-range parameter.
class config_error : public std::invalid_argument {
public:
  explicit config_error(const std::string &what) : std::invalid_argument(what) {}
};

// A precondition of an operation was violated by the caller.
class contract_error : public std::invalid_argument {
public:
  explicit contract_error(const std::string &what) : std::invalid_argument(what) {}
};

// Argument outside the mathematical domain of a function.
class domain_error : public std::domain_error {
public:
  explicit domain_error(const std::string &what) : std::domain_error(what) {}
};

// Iterative method did not converge, or a degenerate input made the result undefined.
class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string &what) : std::runtime_error(what) {}
};

class io_error : public std::runtime_error {
public:
  explicit io_error(const std::string &what) : std::runtime_error(what) {}
};

} // namespace irspca
