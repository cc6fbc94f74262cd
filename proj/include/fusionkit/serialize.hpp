#pragma once

// Deterministic JSON output. Inbound JSON goes through a parser library, but
// everything written out is emitted by hand with fixed key order, fixed
// layout, and %.17g floats, so identical inputs always produce identical
// bytes. Negative zero is normalized away.

#include <cstdio>

#include "fusionkit/affine.hpp"
#include "fusionkit/groups.hpp"

namespace fusionkit {

inline std::string format_double(double v) {
    if (!std::isfinite(v)) throw integrity_error_t("format_double: non-finite value");
    if (v == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out.push_back(ch);
                }
        }
    }
    return out;
}

namespace detail {

inline std::string json_weight(const Weight& w) {
    std::string out = "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(w[i]);
    }
    out.push_back(']');
    return out;
}

inline std::string json_complex(const std::complex<double>& v) {
    return "[" + format_double(v.real()) + "," + format_double(v.imag()) + "]";
}

} // namespace detail

inline std::string to_json(const DecompositionContext& ctx, const std::string& indent) {
    std::string out = "{\n";
    out += indent + "  \"kind\": \"" + context_kind_name(ctx.kind) + "\"";
    if (ctx.kind == ContextKind::group) {
        out += ",\n" + indent + "  \"table\": \"" + json_escape(ctx.table) + "\"";
    } else {
        out += ",\n" + indent + "  \"algebra\": \"" + ctx.algebra.name() + "\"";
        if (ctx.kind == ContextKind::fusion) out += ",\n" + indent + "  \"level\": " + std::to_string(ctx.level);
    }
    out += "\n" + indent + "}";
    return out;
}

inline std::string to_json(const Decomposition& dec) {
    std::string out = "{\n  \"context\": " + to_json(dec.context, "  ") + ",\n  \"terms\": [";
    const auto terms = sorted_terms(dec);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        out += i ? ",\n    " : "\n    ";
        out += "{\"weight\": " + detail::json_weight(terms[i].first) +
               ", \"mult\": " + std::to_string(terms[i].second) + "}";
    }
    out += terms.empty() ? "]\n}" : "\n  ]\n}";
    return out;
}

inline std::string to_json(const CharacterTable& t) {
    std::string out = "{\n  \"name\": \"" + json_escape(t.name) + "\",\n  \"order\": " + std::to_string(t.order) +
                      ",\n  \"classes\": [";
    for (std::size_t c = 0; c < t.num_classes(); ++c) {
        out += c ? ",\n    " : "\n    ";
        out += "{\"size\": " + std::to_string(t.class_sizes[c]);
        if (t.has_power_map()) out += ", \"square_class\": " + std::to_string(t.square_class[c]);
        out += "}";
    }
    out += "\n  ],\n  \"irreps\": [";
    for (std::size_t i = 0; i < t.num_irreps(); ++i) {
        out += i ? ",\n    [" : "\n    [";
        for (std::size_t c = 0; c < t.num_classes(); ++c) {
            if (c) out.push_back(',');
            out += detail::json_complex(t.chars[i][c]);
        }
        out.push_back(']');
    }
    out += "\n  ]\n}";
    return out;
}

inline std::string to_json(const SMatrix& s) {
    std::string out = "{\n  \"algebra\": \"" + s.algebra.name() + "\",\n  \"level\": " + std::to_string(s.level) +
                      ",\n  \"index\": [";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += i ? ",\n    " : "\n    ";
        out += detail::json_weight(s.index[i]);
    }
    out += "\n  ],\n  \"entries\": [";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += i ? ",\n    [" : "\n    [";
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (j) out.push_back(',');
            out += detail::json_complex(s.at(i, j));
        }
        out.push_back(']');
    }
    out += "\n  ]\n}";
    return out;
}

} // namespace fusionkit
