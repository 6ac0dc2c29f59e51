// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
#include "mpuforge/circuit_json.hpp"

#include <unordered_map>

namespace mpuforge {

namespace {

const char *kind_name(Primitive::Kind k) {
    switch (k) {
    case Primitive::Kind::Dense:
        return "dense";
    case Primitive::Kind::Diagonal:
        return "diagonal";
    case Primitive::Kind::Reflector:
        return "reflector";
    case Primitive::Kind::ConditionalPhase:
        return "conditional_phase";
    }
    return "?";
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from(const json &j) {
    if (!j.is_array() || j.size() != 2)
        throw ValidationError("circuit: malformed complex number");
    return {j[0].get<double>(), j[1].get<double>()};
}

class Writer {
  public:
    json out = {{"format", "mpuforge-circuit"}, {"version", "v1"}};

    Writer() {
        out["matrices"] = json::array();
        out["diagonals"] = json::array();
        out["reflectors"] = json::array();
        out["nodes"] = json::array();
    }

    int node(const NodePtr &n) {
        if (auto it = nodes_.find(n.get()); it != nodes_.end())
            return it->second;
        json j;
        if (const auto *p = std::get_if<Primitive>(&n->v)) {
            j["type"] = "primitive";
            j["kind"] = kind_name(p->kind);
            j["registers"] = p->registers;
            switch (p->kind) {
            case Primitive::Kind::Dense:
                j["matrix"] = pooled(matrices_, p->matrix.get(), "matrices",
                                     [&] { return matrix_to_json(*p->matrix); });
                break;
            case Primitive::Kind::Diagonal:
                j["diagonal"] = pooled(diagonals_, p->diagonal.get(), "diagonals",
                                       [&] { return vector_to_json(*p->diagonal); });
                break;
            case Primitive::Kind::Reflector:
                j["reflector"] = pooled(reflectors_, p->reflector.get(), "reflectors", [&] {
                    return json{{"v", vector_to_json(p->reflector->v)},
                                {"phase", cplx_json(p->reflector->phase)}};
                });
                break;
            case Primitive::Kind::ConditionalPhase:
                j["zero_regs"] = p->zero_regs;
                j["nonzero_regs"] = p->nonzero_regs;
                j["phase"] = cplx_json(p->phase);
                break;
            }
        } else if (const auto *s = std::get_if<Sequence>(&n->v)) {
            j["type"] = "sequence";
            j["children"] = children(s->children);
        } else if (const auto *q = std::get_if<Parallel>(&n->v)) {
            j["type"] = "parallel";
            j["children"] = children(q->children);
        } else if (const auto *r = std::get_if<Repeat>(&n->v)) {
            j["type"] = "repeat";
            j["body"] = node(r->body);
            j["times"] = r->times;
        } else if (const auto *a = std::get_if<Adjoint>(&n->v)) {
            j["type"] = "adjoint";
            j["child"] = node(a->child);
        } else if (const auto *o = std::get_if<Overhead>(&n->v)) {
            j["type"] = "overhead";
            j["cost"] = o->cost;
        }
        j["label"] = n->label;
        const int id = static_cast<int>(out["nodes"].size());
        out["nodes"].push_back(std::move(j));
        nodes_.emplace(n.get(), id);
        return id;
    }

  private:
    json children(const std::vector<NodePtr> &cs) {
        json arr = json::array();
        for (const NodePtr &c : cs)
            arr.push_back(node(c));
        return arr;
    }

    template <class F>
    int pooled(std::unordered_map<const void *, int> &pool, const void *key, const char *field, F make) {
        if (auto it = pool.find(key); it != pool.end())
            return it->second;
        const int id = static_cast<int>(out[field].size());
        out[field].push_back(make());
        pool.emplace(key, id);
        return id;
    }

    std::unordered_map<const Node *, int> nodes_;
    std::unordered_map<const void *, int> matrices_, diagonals_, reflectors_;
};

} // namespace

json circuit_to_json(const Circuit &c) {
    Writer w;
    json regs = json::array();
    for (const Register &r : c.registers.all())
        regs.push_back({{"id", r.id}, {"kind", to_string(r.kind)}, {"dim", r.dim}, {"label", r.label}});
    w.out["registers"] = regs;
    w.out["root"] = w.node(c.root);
    return w.out;
}

Circuit circuit_from_json(const json &j) {
    try {
        if (j.value("format", std::string()) != "mpuforge-circuit")
            throw ValidationError("circuit: missing format tag");
        if (j.value("version", std::string()) != "v1")
            throw ValidationError("circuit: unsupported version");
        Circuit c;
        for (const json &r : j.at("registers")) {
            const int id = c.registers.add(register_kind_from_string(r.at("kind").get<std::string>()),
                                           r.at("dim").get<int>(), r.value("label", std::string()));
            if (id != r.at("id").get<int>())
                throw ValidationError("circuit: register ids must be 0..n-1 in order");
        }
        std::vector<std::shared_ptr<const CMatrix>> mats;
        for (const json &m : j.at("matrices"))
            mats.push_back(std::make_shared<const CMatrix>(matrix_from_json(m)));
        std::vector<std::shared_ptr<const CVector>> diags;
        for (const json &d : j.at("diagonals"))
            diags.push_back(std::make_shared<const CVector>(vector_from_json(d, "diagonal")));
        std::vector<std::shared_ptr<const Reflector>> refls;
        for (const json &r : j.at("reflectors")) {
            Reflector x;
            x.v = vector_from_json(r.at("v"), "reflector");
            x.phase = cplx_from(r.at("phase"));
            refls.push_back(std::make_shared<const Reflector>(std::move(x)));
        }
        std::vector<NodePtr> nodes;
        auto ref = [&](const json &idx) -> NodePtr {
            const auto k = idx.get<std::size_t>();
            if (k >= nodes.size())
                throw ValidationError("circuit: node references a later node");
            return nodes[k];
        };
        auto at = [](const auto &pool, const json &idx, const char *what) {
            const auto k = idx.get<std::size_t>();
            if (k >= pool.size())
                throw ValidationError(std::string("circuit: bad ") + what + " index");
            return pool[k];
        };
        for (const json &n : j.at("nodes")) {
            const std::string type = n.at("type").get<std::string>();
            const std::string label = n.value("label", std::string());
            NodePtr node;
            if (type == "primitive") {
                const std::string kind = n.at("kind").get<std::string>();
                if (kind == "dense")
                    node = make_dense(c.registers, n.at("registers").get<std::vector<int>>(),
                                      at(mats, n.at("matrix"), "matrix"), label);
                else if (kind == "diagonal")
                    node = make_diagonal(c.registers, n.at("registers").get<std::vector<int>>(),
                                         at(diags, n.at("diagonal"), "diagonal"), label);
                else if (kind == "reflector")
                    node = make_reflector(c.registers, n.at("registers").get<std::vector<int>>(),
                                          at(refls, n.at("reflector"), "reflector"), label);
                else if (kind == "conditional_phase")
                    node = make_conditional_phase(n.at("zero_regs").get<std::vector<int>>(),
                                                  n.at("nonzero_regs").get<std::vector<int>>(),
                                                  cplx_from(n.at("phase")), label);
                else
                    throw ValidationError("circuit: unknown primitive kind " + kind);
            } else if (type == "sequence" || type == "parallel") {
                std::vector<NodePtr> cs;
                for (const json &k : n.at("children"))
                    cs.push_back(ref(k));
                node = type == "sequence" ? make_sequence(std::move(cs), label)
                                          : make_parallel(std::move(cs), label);
            } else if (type == "repeat") {
                node = make_repeat(ref(n.at("body")), n.at("times").get<std::uint64_t>(), label);
            } else if (type == "adjoint") {
                auto a = std::make_shared<Node>(*make_adjoint(ref(n.at("child"))));
                a->label = label;
                node = a;
            } else if (type == "overhead") {
                node = make_overhead(n.at("cost").get<std::uint64_t>(), label);
            } else {
                throw ValidationError("circuit: unknown node type " + type);
            }
            nodes.push_back(std::move(node));
        }
        c.root = ref(j.at("root"));
        validate(c.root, c.registers);
        return c;
    } catch (const json::exception &e) {
        throw ValidationError(std::string("circuit: malformed JSON: ") + e.what());
    }
}

} // namespace mpuforge
