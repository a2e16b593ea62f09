#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace beamtrim {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BEAMTRIM_DEFINE_ERROR(Name)      \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

// Geometry
BEAMTRIM_DEFINE_ERROR(AngleNearPi);

// Filtering
BEAMTRIM_DEFINE_ERROR(InsufficientPoints);
BEAMTRIM_DEFINE_ERROR(DegenerateNeighborhood);
BEAMTRIM_DEFINE_ERROR(SingularValueCollapse);
BEAMTRIM_DEFINE_ERROR(EmptyOutput);

// Correspondence rejection
BEAMTRIM_DEFINE_ERROR(VerticalBeam);
BEAMTRIM_DEFINE_ERROR(GrazingIncidence);

// Registration
BEAMTRIM_DEFINE_ERROR(DegenerateSystem);

// I/O and evaluation
BEAMTRIM_DEFINE_ERROR(MalformedFile);
BEAMTRIM_DEFINE_ERROR(EmptyScan);
BEAMTRIM_DEFINE_ERROR(TrajectoryTooShort);
BEAMTRIM_DEFINE_ERROR(ConfigError);

#undef BEAMTRIM_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace beamtrim
