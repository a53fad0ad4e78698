#pragma once

#include <iosfwd>

#include "lqp/forms/form.hpp"
#include "lqp/geometry/geometry.hpp"

namespace lqp::forms {

/// Writes a sampled form in the text layout of docs/formats.md. Analytic forms
/// must be sampled first.
void write_text(std::ostream& out, const DifferentialForm& form);

/// Reads a form written by write_text; the grid is rebuilt from the header.
DifferentialForm read_text(std::istream& in);

}  // namespace lqp::forms
