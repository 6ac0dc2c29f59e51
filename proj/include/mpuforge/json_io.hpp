// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
/**
 * @file
 * JSON interchange for chains and matrices.  Complex numbers are [re, im] pairs;
 * doubles are written with round-trip precision so files reload bit-exactly.
 */
#pragma once

#include <string>

#include <json.hpp>

#include "mpuforge/mpo.hpp"

namespace mpuforge {

using json = nlohmann::json;

json complex_list_to_json(const cplx *data, std::size_t n);
std::vector<cplx> complex_list_from_json(const json &j, const char *what);

json matrix_to_json(const CMatrix &m);
CMatrix matrix_from_json(const json &j);

json vector_to_json(const CVector &v);
CVector vector_from_json(const json &j, const char *what);

/// { "sites": [ {d_out, d_in, D_left, D_right, entries} ], "l": [...], "r": [...] }
json chain_to_json(const MpoChain &chain);
MpoChain chain_from_json(const json &j);

MpoChain read_chain_file(const std::string &path);
void write_chain_file(const MpoChain &chain, const std::string &path);

json read_json_file(const std::string &path);
void write_json_file(const json &j, const std::string &path);

} // namespace mpuforge
