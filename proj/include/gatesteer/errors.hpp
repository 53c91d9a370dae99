/* Copyright 2026 The Gatesteer Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#pragma once

#include <stdexcept>
#include <string>

namespace gatesteer {

/// Base class for all gatesteer exceptions.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid configuration, preset name, schema key or parameter range.
struct ConfigError : Error {
  using Error::Error;
};

/// Numerical contract violations (preconditions on matrices, integrator
/// blow-up, non-real invariants).
struct NumericError : Error {
  using Error::Error;
};

struct NotHermitian : NumericError {
  using NumericError::NumericError;
};

struct NotUnitary : NumericError {
  using NumericError::NumericError;
};

struct SingularInput : NumericError {
  using NumericError::NumericError;
};

struct DimMismatch : NumericError {
  using NumericError::NumericError;
};

struct NonRealG2 : NumericError {
  using NumericError::NumericError;
};

struct UnstableIntegration : NumericError {
  using NumericError::NumericError;
};

struct BadSite : ConfigError {
  using ConfigError::ConfigError;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace gatesteer
