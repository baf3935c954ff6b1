// SPDX-License-Identifier: Apache-2.0
//
// ssvsp - precoding library for radar/cellular spectrum coexistence
// Copyright (C) 2026 The ssvsp authors
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

namespace ssvsp {

// Scenario or input rejected before any numerical work.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A kernel broke down (indefinite system, SVD failure, non-finite data).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ssvsp
