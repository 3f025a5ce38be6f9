#ifndef TWISTCONV_ERRORS_HPP
#define TWISTCONV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twistconv {

/// A convolution symbol (or a block of the finite system) is numerically
/// singular: no inverse exists at the requested tolerance.
class NotInvertibleError : public std::runtime_error {
public:
  explicit NotInvertibleError(const std::string& what) : std::runtime_error(what) {}
};

/// Grid refinement ran out before the truncation criteria were met.
class TruncationNotConvergedError : public std::runtime_error {
public:
  explicit TruncationNotConvergedError(const std::string& what) : std::runtime_error(what) {}
};

/// Column sequences that must live on disjoint cosets share support.
class OverlappingSupportsError : public std::runtime_error {
public:
  explicit OverlappingSupportsError(const std::string& what) : std::runtime_error(what) {}
};

/// The Neumann series requires a contraction and the input is not one.
class NotContractiveError : public std::runtime_error {
public:
  explicit NotContractiveError(const std::string& what) : std::runtime_error(what) {}
};

class MaxIterExceededError : public std::runtime_error {
public:
  explicit MaxIterExceededError(const std::string& what) : std::runtime_error(what) {}
};

/// The Gabor frame operator is numerically singular.
class NotAFrameError : public std::runtime_error {
public:
  explicit NotAFrameError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace twistconv

#endif  // TWISTCONV_ERRORS_HPP
