#pragma once

#include <string>

namespace kecalc {

/// Decimal-scientific rendering with 12 significant digits, the shared
/// convention for CSV and JSON float output.
std::string format_sig12(double x);

} // namespace kecalc
