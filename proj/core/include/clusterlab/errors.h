// Copyright 2026 The Clusterlab Authors
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

#ifndef CLUSTERLAB_ERRORS_H_
#define CLUSTERLAB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace clusterlab {

/// A time-evolution step could not reach the requested accuracy.
class ConvergenceError : public std::runtime_error {
   public:
    ConvergenceError(const std::string &what, double residual)
        : std::runtime_error(what), residual_(residual) {
    }
    /// Best error estimate achieved before giving up.
    double residual() const {
        return residual_;
    }

   private:
    double residual_;
};

/// A Hilbert space or operator would exceed a configured size cap.
class ResourceLimitError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace clusterlab

#endif  // CLUSTERLAB_ERRORS_H_
