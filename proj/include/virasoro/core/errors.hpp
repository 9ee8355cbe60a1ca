// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <stdexcept>
#include <string>

namespace virasoro {

// Exit codes used by the CLI: 0 success, 2 config error, 3 numerical error.
enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalError = 3 };

// Invalid user input: sizes, parameter counts, file contents, option clashes.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
};

// A numerical stage failed: solver non-convergence, degenerate tables,
// rank deficiency. Carries an optional stage annotation for pipelines.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

// Rethrow helper that prefixes the pipeline stage name.
template <class Fn> auto with_stage(const std::string &stage, Fn &&fn) {
    try {
        return fn();
    } catch (const ConfigError &e) {
        throw ConfigError("[" + stage + "] " + e.what());
    } catch (const NumericalError &e) {
        throw NumericalError("[" + stage + "] " + e.what());
    }
}

} // namespace virasoro
