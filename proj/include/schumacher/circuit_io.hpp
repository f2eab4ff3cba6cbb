#pragma once

#include "schumacher/circuit.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace schumacher {

// One gate per line:
//   x t | cx c t | ncx c t | ccx c1 c2 t | ccx! -+|-- c1 c2 t | orx c1 c2 t
//   pccx fwd|rev c1 c2 t | pccx! -+|-- fwd|rev c1 c2 t | porx fwd|rev c1 c2 t
//   u NAME q | udg NAME q
// Header lines `qubits N` and `register NAME lo hi flags`, `begin NAME` / `end NAME`
// span markers, `#` comments.
void write_circuit(std::ostream& os, const Circuit& c, bool with_spans = true);
std::string serialize(const Circuit& c, bool with_spans = true);

// Throws std::invalid_argument with the offending line number.
Circuit parse_circuit(std::istream& is);
Circuit parse_circuit(std::string_view text);

std::string_view one_qubit_name(OneQubitOp op);

} // namespace schumacher
