// Copyright 2026 The posepaste Authors. All rights reserved.
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

#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace posepaste {

// Image coordinates throughout: x grows right, y grows down, pixel (i, j)
// covers [i, i+1) x [j, j+1) so its center is (i + 0.5, j + 0.5).
template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

using Point2d = Point2<double>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed annotation, manifest, or metrics input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or unsupported raster file.
class LoadError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent record (e.g. mask and image dimensions differ).
class AssemblyError : public Error {
 public:
  using Error::Error;
};

/// Coincident landmarks that leave an angle or length undefined.
class DegeneratePoseError : public Error {
 public:
  using Error::Error;
};

/// Invalid numeric parameter such as a non-positive bin.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition was violated by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Invalid pipeline configuration or unusable output location.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace posepaste
