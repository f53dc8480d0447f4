#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gridflow {

// Simulated seconds since instance start. All engine timing is virtual.
using VirtualTime = double;
using WorkUnits = double;
using Bytes = std::int64_t;

using ActivityId = std::string;
using ServiceId = std::string;
using ResourceId = std::string;
using FileName = std::string;

// Replica location used for workflow inputs that no activity produces.
inline const ResourceId kExternalStore = "@external";

enum class ErrorCode {
    CyclicWorkflow,
    InvalidTransition,
    DuplicateService,
    InvalidDescriptor,
    UnknownService,
    NoCandidates,
    NoViableBinding,
    UnknownDefinition,
    UnknownInstance,
    TimeTravel,
    EventBudgetExceeded,
    UnknownResource,
    NoAliveCandidate,
    CapacityExhausted,
    UnknownFile,
    ForeignSnapshot,
    ConfigError,
    InvalidWidth,
    InvalidLength,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace gridflow
