#pragma once

#include <stdexcept>
#include <string>

namespace heights {

// Error taxonomy mirrors the process exit codes: usage problems, failures of a
// mathematical stage (inconsistent system, singular fiber, ...), and failures
// that more working precision would cure.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

class MathError : public std::runtime_error {
public:
    explicit MathError(const std::string& msg) : std::runtime_error(msg) {}
};

class PrecisionError : public std::runtime_error {
public:
    explicit PrecisionError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Wraps a module error with the pipeline stage that raised it, so a failed run
// names the stage and the caller can serialize reproduction inputs.
class StageError : public std::runtime_error {
public:
    StageError(const std::string& stage, const std::string& msg)
        : std::runtime_error("[" + stage + "] " + msg), stage_(stage) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

}  // namespace heights
