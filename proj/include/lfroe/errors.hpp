#pragma once

#include <stdexcept>
#include <string>

namespace lfroe {

// Base for every failure the library reports. The CLI maps the concrete
// subclasses onto exit codes.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input that cannot be parsed or violates a type invariant.
class malformed_input : public error {
public:
    using error::error;
};

// A truncation is too shallow for the requested computation, or a scan bound
// was exceeded.
class depth_exhausted : public error {
public:
    using error::error;
};

// A documented precondition does not hold (towers not equivalent, operator
// not block diagonal at the requested level, ...).
class precondition_violation : public error {
public:
    using error::error;
};

class not_equivalent : public precondition_violation {
public:
    using precondition_violation::precondition_violation;
};

class not_block_diagonal : public precondition_violation {
public:
    using precondition_violation::precondition_violation;
};

class not_projection : public precondition_violation {
public:
    using precondition_violation::precondition_violation;
};

class context_mismatch : public precondition_violation {
public:
    using precondition_violation::precondition_violation;
};

class unsupported_entries : public precondition_violation {
public:
    using precondition_violation::precondition_violation;
};

} // namespace lfroe
