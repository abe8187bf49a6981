#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace r4curv {

// Expression text could not be parsed; offset is a byte position into the source.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t offset)
        : std::runtime_error(std::move(msg)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Evaluation hit a domain boundary (log of a non-positive value, division by zero, ...).
class EvalDomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Surface description file is malformed; line is 1-based.
class SurfaceFormatError : public std::runtime_error {
public:
    SurfaceFormatError(std::string msg, int line)
        : std::runtime_error(std::move(msg)), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

// First fundamental form is singular at the requested point.
class DegenerateImmersion : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A vector passed as a unit normal is not normal (or not unit) at this point.
class NotNormal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Direction field undefined at a flow seed.
class SeedDegenerate : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Constructed normal frame rotates too fast across a finite-difference stencil.
class FrameDiscontinuity : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Winding computation could not produce a trustworthy quantized index.
class IndexUnresolved : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Direction field degenerates somewhere on the sampling loop.
class SingularOnLoop : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Point cloud does not determine a hypersphere (rank-deficient normal system).
class DegenerateCloud : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Curvature ellipse is not a segment or a point, so no normal direction can
// see the surface as umbilic at this point.
class EllipseNotSegment : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace r4curv
