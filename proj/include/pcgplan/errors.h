// Copyright 2026 The Authors.
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

#ifndef PCGPLAN_ERRORS_H_
#define PCGPLAN_ERRORS_H_

#include <stdexcept>
#include <string>

namespace pcgplan {

// Malformed or unreadable input geometry.
class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or configuration documents.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The sampling shell came out empty.
class EmptyRegionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested coverage exceeds what the graph (or viewpoint set) can reach.
class UnreachableCoverageError : public std::runtime_error {
 public:
  UnreachableCoverageError(const std::string& what, double max_coverage)
      : std::runtime_error(what), max_coverage_(max_coverage) {}
  double max_coverage() const { return max_coverage_; }

 private:
  double max_coverage_;
};

// Search exceeded its iteration cap.
class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pcgplan

#endif  // PCGPLAN_ERRORS_H_
