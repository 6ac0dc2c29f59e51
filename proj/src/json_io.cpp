// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
#include "mpuforge/json_io.hpp"

#include <fstream>
#include <sstream>

namespace mpuforge {

json complex_list_to_json(const cplx *data, std::size_t n) {
    json arr = json::array();
    for (std::size_t k = 0; k < n; ++k)
        arr.push_back(json::array({data[k].real(), data[k].imag()}));
    return arr;
}

std::vector<cplx> complex_list_from_json(const json &j, const char *what) {
    if (!j.is_array())
        throw ValidationError(std::string(what) + ": expected an array of [re, im] pairs");
    std::vector<cplx> out;
    out.reserve(j.size());
    for (const json &z : j) {
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
            throw ValidationError(std::string(what) + ": malformed complex entry");
        out.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
    return out;
}

json matrix_to_json(const CMatrix &m) {
    std::vector<cplx> rowmajor(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            rowmajor[static_cast<std::size_t>(i * m.cols() + k)] = m(i, k);
    return {{"rows", m.rows()},
            {"cols", m.cols()},
            {"entries", complex_list_to_json(rowmajor.data(), rowmajor.size())}};
}

CMatrix matrix_from_json(const json &j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw ValidationError("matrix: expected {rows, cols, entries}");
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const std::vector<cplx> e = complex_list_from_json(j.at("entries"), "matrix");
    if (rows < 0 || cols < 0 || static_cast<Eigen::Index>(e.size()) != rows * cols)
        throw ValidationError("matrix: entry count does not match rows*cols");
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = e[static_cast<std::size_t>(i * cols + k)];
    return m;
}

json vector_to_json(const CVector &v) { return complex_list_to_json(v.data(), v.size()); }

CVector vector_from_json(const json &j, const char *what) {
    const std::vector<cplx> e = complex_list_from_json(j, what);
    CVector v(static_cast<Eigen::Index>(e.size()));
    for (std::size_t k = 0; k < e.size(); ++k)
        v(static_cast<Eigen::Index>(k)) = e[k];
    return v;
}

json chain_to_json(const MpoChain &chain) {
    json sites = json::array();
    for (const MpoTensor &t : chain.tensors)
        sites.push_back({{"d_out", t.d_out},
                         {"d_in", t.d_in},
                         {"D_left", t.D_left},
                         {"D_right", t.D_right},
                         {"entries", complex_list_to_json(t.entries.data(), t.entries.size())}});
    return {{"sites", sites}, {"l", vector_to_json(chain.l)}, {"r", vector_to_json(chain.r)}};
}

MpoChain chain_from_json(const json &j) {
    if (!j.is_object() || !j.contains("sites") || !j.contains("l") || !j.contains("r"))
        throw ValidationError("chain: expected {sites, l, r}");
    MpoChain chain;
    for (const json &s : j.at("sites")) {
        for (const char *key : {"d_out", "d_in", "D_left", "D_right", "entries"})
            if (!s.contains(key))
                throw ValidationError(std::string("chain site: missing field ") + key);
        MpoTensor t(s.at("d_out").get<int>(), s.at("d_in").get<int>(), s.at("D_left").get<int>(),
                    s.at("D_right").get<int>());
        t.entries = complex_list_from_json(s.at("entries"), "chain site entries");
        if (t.entries.size() != static_cast<std::size_t>(t.d_out) * t.d_in * t.D_left * t.D_right)
            throw ValidationError("chain site: entry count does not match dimensions");
        chain.tensors.push_back(std::move(t));
    }
    chain.l = vector_from_json(j.at("l"), "chain l");
    chain.r = vector_from_json(j.at("r"), "chain r");
    try {
        chain.validate();
    } catch (const ShapeError &e) {
        throw ValidationError(e.what());
    }
    return chain;
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw ValidationError("invalid JSON in " + path + ": " + e.what());
    }
}

void write_json_file(const json &j, const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    out << j.dump(1) << '\n';
}

MpoChain read_chain_file(const std::string &path) { return chain_from_json(read_json_file(path)); }

void write_chain_file(const MpoChain &chain, const std::string &path) {
    write_json_file(chain_to_json(chain), path);
}

} // namespace mpuforge
