// Copyright 2026 The Bohatei Sim Authors. All rights reserved.
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

#ifndef BOHATEI_ERRORS_H_
#define BOHATEI_ERRORS_H_

#include <stdexcept>
#include <string>

namespace bohatei {

// Malformed or out-of-range input (bad index, invalid graph, bad file).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A finite resource ran out: tag space, VM slots, an empty tag pool.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Placement could not be completed for a specific logical node.
class InfeasibleError : public CapacityError {
 public:
  InfeasibleError(const std::string& what, int attack, int node)
      : CapacityError(what), attack_(attack), node_(node) {}
  int attack() const { return attack_; }
  int node() const { return node_; }

 private:
  int attack_;
  int node_;
};

// Two incompatible requests for the same resource (e.g. a tag pinned twice).
class ConflictError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The exhaustive oracle refuses instances outside its size bounds.
class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bohatei

#endif  // BOHATEI_ERRORS_H_
