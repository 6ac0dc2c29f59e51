// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
/**
 * @file
 * Circuit JSON schema "v1".  Nodes are stored once in a table in dependency
 * order (children before parents) and referenced by index, so shared
 * sub-circuits stay shared; matrices, diagonals and reflectors are likewise
 * pooled.  Doubles use round-trip precision, so dump -> load -> dump is
 * bit-exact.
 *
 *   { "format": "mpuforge-circuit", "version": "v1",
 *     "registers": [ {"id", "kind", "dim", "label"} ],
 *     "matrices": [ {"rows", "cols", "entries"} ], "diagonals": [ [[re,im],...] ],
 *     "reflectors": [ {"v": [...], "phase": [re, im]} ],
 *     "nodes": [ {"type": "primitive"|"sequence"|"parallel"|"repeat"|"adjoint"|"overhead", ...} ],
 *     "root": index }
 */
#pragma once

#include "mpuforge/circuit.hpp"
#include "mpuforge/json_io.hpp"

namespace mpuforge {

json circuit_to_json(const Circuit &c);
Circuit circuit_from_json(const json &j);

} // namespace mpuforge
