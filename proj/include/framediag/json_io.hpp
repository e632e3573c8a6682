#ifndef FRAMEDIAG_JSON_IO_HPP
#define FRAMEDIAG_JSON_IO_HPP

// JSON form of SequenceSpec (schemas/sequence.schema.json).
//
// Complex scalars are [re, im] (a bare number is accepted as real).  Columns
// are arrays of complex scalars, so an explicit matrix is column-major.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "framediag/error.hpp"
#include "framediag/sequence.hpp"
#include "framediag/util.hpp"

namespace framediag {

using json = nlohmann::json;

inline json to_json(complex z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const WeightRule& w) {
    return std::visit(overloaded{
                          [](const weight::InverseIndex&) { return json{{"rule", "inverse_index"}}; },
                          [](const weight::Index&) { return json{{"rule", "index"}}; },
                          [](const weight::Constant& c) { return json{{"rule", "constant"}, {"value", to_json(c.value)}}; },
                          [](const weight::Geometric& g) { return json{{"rule", "geometric"}, {"ratio", to_json(g.ratio)}}; },
                          [](const weight::Table& t) {
                              json values = json::array();
                              for (complex v : t.values) values.push_back(to_json(v));
                              return json{{"rule", "table"}, {"values", values}};
                          },
                      },
                      w);
}

inline json to_json(const SparseVector& v) {
    json out = json::array();
    for (const Term& t : v) out.push_back({{"index", t.index}, {"coeff", to_json(t.coeff)}});
    return out;
}

inline json to_json(const SequenceSpec& s) {
    return std::visit(
        overloaded{
            [](const spec::Explicit& e) {
                json cols = json::array();
                for (const auto& c : e.columns) {
                    json col = json::array();
                    for (complex v : c) col.push_back(to_json(v));
                    cols.push_back(col);
                }
                return json{{"kind", "explicit"}, {"columns", cols}};
            },
            [](const spec::ScaledBasis& b) { return json{{"kind", "scaled_basis"}, {"weight", to_json(b.weight)}}; },
            [](const Pattern& p) {
                json prefix = json::array();
                for (const auto& v : p.prefix) prefix.push_back(to_json(v));
                json cycle = json::array();
                for (const auto& st : p.cycle) {
                    cycle.push_back({{"start", st.start},
                                     {"step", st.step},
                                     {"weight", to_json(st.weight)},
                                     {"offset", st.offset}});
                }
                return json{{"kind", "pattern"}, {"prefix", prefix}, {"cycle", cycle}};
            },
            [](const spec::PaperExample& p) {
                return json{{"kind", "paper_example"}, {"id", to_string(p.id)}, {"role", to_string(p.role)}};
            },
            [](const spec::RandomRiesz& r) {
                return json{{"kind", "random_riesz"}, {"d", r.dim}, {"seed", r.seed}, {"role", to_string(r.role)}};
            },
            [](const spec::RandomFrame& r) {
                return json{{"kind", "random_frame"}, {"d", r.dim}, {"n", r.count}, {"seed", r.seed}};
            },
        },
        s);
}

namespace detail {

inline const json& field(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) throw spec_parse_error("expected an object", path);
    auto it = obj.find(key);
    if (it == obj.end()) throw spec_parse_error(std::string("missing field '") + key + "'", path);
    return *it;
}

inline complex parse_complex(const json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw spec_parse_error("malformed complex entry, expected [re, im]", path);
}

inline std::uint64_t parse_unsigned(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) throw spec_parse_error("expected a non-negative integer", path);
    return j.get<std::uint64_t>();
}

inline std::size_t parse_positive(const json& j, const std::string& path) {
    const auto v = parse_unsigned(j, path);
    if (v == 0) throw spec_parse_error("expected a positive integer", path);
    return static_cast<std::size_t>(v);
}

inline Role parse_role(const json& obj, const std::string& path) {
    auto it = obj.find("role");
    if (it == obj.end()) return Role::f;
    if (*it == "f") return Role::f;
    if (*it == "g") return Role::g;
    throw spec_parse_error("role must be \"f\" or \"g\"", path + "/role");
}

inline WeightRule parse_weight(const json& j, const std::string& path) {
    const json& rule = field(j, "rule", path);
    if (!rule.is_string()) throw spec_parse_error("rule must be a string", path + "/rule");
    const auto name = rule.get<std::string>();
    if (name == "inverse_index") return weight::InverseIndex{};
    if (name == "index") return weight::Index{};
    if (name == "constant") {
        auto it = j.find("value");
        return weight::Constant{it == j.end() ? complex{1.0} : parse_complex(*it, path + "/value")};
    }
    if (name == "geometric") return weight::Geometric{parse_complex(field(j, "ratio", path), path + "/ratio")};
    if (name == "table") {
        const json& values = field(j, "values", path);
        if (!values.is_array() || values.empty()) throw spec_parse_error("values must be a non-empty array", path + "/values");
        weight::Table t;
        for (std::size_t i = 0; i < values.size(); ++i) {
            t.values.push_back(parse_complex(values[i], path + "/values/" + std::to_string(i)));
        }
        return t;
    }
    throw spec_parse_error("unknown weight rule '" + name + "'", path + "/rule");
}

inline SparseVector parse_sparse_vector(const json& j, const std::string& path) {
    if (!j.is_array()) throw spec_parse_error("expected an array of terms", path);
    SparseVector v;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        v.push_back(Term{parse_positive(field(j[i], "index", p), p + "/index"),
                         parse_complex(field(j[i], "coeff", p), p + "/coeff")});
    }
    return v;
}

inline Pattern parse_pattern(const json& j) {
    Pattern p;
    if (auto it = j.find("prefix"); it != j.end()) {
        if (!it->is_array()) throw spec_parse_error("prefix must be an array", "/prefix");
        for (std::size_t i = 0; i < it->size(); ++i) {
            p.prefix.push_back(parse_sparse_vector((*it)[i], "/prefix/" + std::to_string(i)));
        }
    }
    if (auto it = j.find("cycle"); it != j.end()) {
        if (!it->is_array()) throw spec_parse_error("cycle must be an array", "/cycle");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& s = (*it)[i];
            const std::string path = "/cycle/" + std::to_string(i);
            PatternStream st;
            st.start = parse_positive(field(s, "start", path), path + "/start");
            if (auto step = s.find("step"); step != s.end()) st.step = parse_unsigned(*step, path + "/step");
            if (auto w = s.find("weight"); w != s.end()) st.weight = parse_weight(*w, path + "/weight");
            if (auto off = s.find("offset"); off != s.end()) st.offset = parse_unsigned(*off, path + "/offset");
            p.cycle.push_back(std::move(st));
        }
    }
    if (p.prefix.empty() && p.cycle.empty()) throw spec_parse_error("pattern has neither prefix nor cycle", "");
    return p;
}

}  // namespace detail

inline SequenceSpec spec_from_json(const json& j) {
    using namespace detail;
    const json& kind_field = field(j, "kind", "");
    if (!kind_field.is_string()) throw spec_parse_error("kind must be a string", "/kind");
    const auto kind = kind_field.get<std::string>();
    if (kind == "explicit") {
        const json& cols = field(j, "columns", "");
        if (!cols.is_array() || cols.empty()) throw spec_parse_error("columns must be a non-empty array", "/columns");
        spec::Explicit e;
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const std::string path = "/columns/" + std::to_string(k);
            if (!cols[k].is_array() || cols[k].empty()) throw spec_parse_error("column must be a non-empty array", path);
            std::vector<complex> col;
            for (std::size_t i = 0; i < cols[k].size(); ++i) {
                col.push_back(parse_complex(cols[k][i], path + "/" + std::to_string(i)));
            }
            if (k > 0 && col.size() != e.columns.front().size()) {
                throw spec_parse_error("column length mismatch: expected " + std::to_string(e.columns.front().size()) +
                                           " entries, found " + std::to_string(col.size()),
                                       path);
            }
            e.columns.push_back(std::move(col));
        }
        return e;
    }
    if (kind == "scaled_basis") return spec::ScaledBasis{parse_weight(field(j, "weight", ""), "/weight")};
    if (kind == "pattern") return parse_pattern(j);
    if (kind == "paper_example") {
        const json& id = field(j, "id", "");
        if (!id.is_string()) throw spec_parse_error("id must be a string", "/id");
        const auto parsed = parse_example_id(id.get<std::string>());
        if (!parsed) {
            throw spec_parse_error("unknown example id '" + id.get<std::string>() + "'; valid ids: " +
                                       valid_example_ids(),
                                   "/id");
        }
        return spec::PaperExample{*parsed, parse_role(j, "")};
    }
    if (kind == "random_riesz") {
        return spec::RandomRiesz{parse_positive(field(j, "d", ""), "/d"), parse_unsigned(field(j, "seed", ""), "/seed"),
                                 parse_role(j, "")};
    }
    if (kind == "random_frame") {
        spec::RandomFrame r{parse_positive(field(j, "d", ""), "/d"), parse_positive(field(j, "n", ""), "/n"),
                            parse_unsigned(field(j, "seed", ""), "/seed")};
        if (r.count < r.dim) throw spec_parse_error("random_frame requires n >= d", "/n");
        return r;
    }
    throw spec_parse_error("unknown kind '" + kind + "'", "/kind");
}

inline SequenceSpec parse_sequence_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
        const std::size_t end = std::min(byte, text.size());
        const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
        throw spec_parse_error(std::string("JSON syntax error: ") + e.what(), "", line);
    }
    return spec_from_json(j);
}

inline SequenceSpec load_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_spec("cannot open sequence file '" + path + "'");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_sequence_spec(text);
}

}  // namespace framediag

#endif  // FRAMEDIAG_JSON_IO_HPP
