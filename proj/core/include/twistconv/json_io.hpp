#ifndef TWISTCONV_JSON_IO_HPP
#define TWISTCONV_JSON_IO_HPP

#include <string>

#include "twistconv/finite_twisted.hpp"
#include "twistconv/gabor.hpp"
#include "twistconv/sequence.hpp"
#include "twistconv/twisted_inverse.hpp"

namespace twistconv::json {

// Parsers throw std::invalid_argument on anything malformed: bad JSON, wrong
// shapes, unknown keys, non-finite numbers, duplicate support indices.
// Writers emit canonical JSON — fixed key order, %.17g floats — so identical
// data always serializes to identical bytes.

Sequence parse_sequence(const std::string& text);
std::string write_sequence(const Sequence& s);

struct ParsedFiniteGrid {
  FiniteGrid grid;
  int q = 1;
};
ParsedFiniteGrid parse_finite_grid(const std::string& text);
std::string write_finite_grid(const FiniteGrid& g, int q);

GaborConfig parse_gabor_config(const std::string& text);

std::string write_inversion_report(const InversionReport& r);
std::string write_residual_pair(double right, double left);
std::string write_dual_window(const DualWindowResult& r);

/// Accepts either a Sequence document or an InversionReport document (whose
/// "inverse" is taken); reports also carry their twist parameters.
struct ParsedSecond {
  Sequence seq;
  bool from_report = false;
  int p = 0;
  int q = 0;
};
ParsedSecond parse_sequence_or_report(const std::string& text);

}  // namespace twistconv::json

#endif  // TWISTCONV_JSON_IO_HPP
