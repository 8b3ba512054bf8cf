#pragma once

#include "qmux/circuit.hpp"

#include <string>

namespace qmux {

/// Parses an OpenQASM 2.0 subset: qreg/creg declarations, h, x, sx, rx, ry,
/// rz, cx, cz, swap, iswap, ecr, measure, barrier, plus the opaque sw/sdel
/// gates this toolkit emits. Angle expressions are decimals and simple
/// pi-arithmetic (pi, pi/2, 2*pi, -pi/4). Multi-register programs are
/// flattened in declaration order. Throws QasmError with line/column on
/// syntax errors and unsupported constructs.
Circuit parse_qasm(const std::string& text);

/// Emits a program that parse_qasm accepts and that round-trips structurally.
/// SW/SDEL gates are emitted behind a "// pragma mux gates" header with
/// `opaque sw a,b;` / `opaque sdel a;` declarations.
std::string emit_qasm(const Circuit& circuit);

} // namespace qmux
