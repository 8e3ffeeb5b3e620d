#pragma once

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "spreadlab/parallelism.hpp"
#include "spreadlab/projective.hpp"

// Machine-readable reports. Serialization is byte-deterministic: fields keep
// insertion order and floating-point values are printed at 17 significant
// digits, so re-running a suite with the same seed reproduces the file
// exactly.

namespace spreadlab {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Minimal ordered JSON value for report emission.
class Json {
public:
    static Json null() { return Json(Kind::Null); }
    static Json boolean(bool b) {
        Json j(Kind::Bool);
        j.scalar_ = b ? "true" : "false";
        return j;
    }
    static Json integer(std::int64_t v) {
        Json j(Kind::Number);
        j.scalar_ = std::to_string(v);
        return j;
    }
    static Json real(double v) {
        Json j(Kind::Number);
        j.scalar_ = format_double(v);
        return j;
    }
    static Json str(std::string s) {
        Json j(Kind::String);
        j.scalar_ = std::move(s);
        return j;
    }
    static Json array() { return Json(Kind::Array); }
    static Json object() { return Json(Kind::Object); }

    Json& push_back(Json v) {
        items_.emplace_back("", std::move(v));
        return *this;
    }

    Json& set(const std::string& key, Json v) {
        items_.emplace_back(key, std::move(v));
        return *this;
    }

    bool is_null() const { return kind_ == Kind::Null; }

    std::string dump() const {
        std::string out;
        write(out);
        return out;
    }

private:
    enum class Kind { Null, Bool, Number, String, Array, Object };
    explicit Json(Kind k) : kind_(k) {}

    static void escape(const std::string& s, std::string& out) {
        out += '"';
        for (const char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out += buf;
                    } else {
                        out += c;
                    }
            }
        }
        out += '"';
    }

    void write(std::string& out) const {
        switch (kind_) {
            case Kind::Null: out += "null"; break;
            case Kind::Bool:
            case Kind::Number: out += scalar_; break;
            case Kind::String: escape(scalar_, out); break;
            case Kind::Array: {
                out += '[';
                for (std::size_t i = 0; i < items_.size(); ++i) {
                    if (i) out += ',';
                    items_[i].second.write(out);
                }
                out += ']';
                break;
            }
            case Kind::Object: {
                out += '{';
                for (std::size_t i = 0; i < items_.size(); ++i) {
                    if (i) out += ',';
                    escape(items_[i].first, out);
                    out += ':';
                    items_[i].second.write(out);
                }
                out += '}';
                break;
            }
        }
    }

    Kind kind_;
    std::string scalar_;
    std::vector<std::pair<std::string, Json>> items_;
};

inline Json to_json(const OrientedLine& l) {
    Json a = Json::array();
    for (int i = 0; i < 6; ++i) a.push_back(Json::real(l[i]));
    return a;
}

inline Json to_json(const Line& l) {
    Json a = Json::array();
    for (int i = 0; i < 6; ++i) a.push_back(Json::real(l.pluecker()[i]));
    return a;
}

inline Json to_json(const HPoint& p) {
    Json a = Json::array();
    for (int i = 0; i < 4; ++i) a.push_back(Json::real(p[i]));
    return a;
}

inline Json to_json(const Vec3& v) {
    Json a = Json::array();
    a.push_back(Json::real(v.x));
    a.push_back(Json::real(v.y));
    a.push_back(Json::real(v.z));
    return a;
}

struct CheckReport {
    std::string name;
    bool pass = false;
    double worst_residual = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    Json details = Json::object();
    Json witness = Json::null(); ///< set whenever pass is false

    std::string to_json_string() const {
        Json j = Json::object();
        j.set("name", Json::str(name));
        j.set("status", Json::str(pass ? "pass" : "fail"));
        j.set("worst_residual", Json::real(worst_residual));
        j.set("samples", Json::integer(samples));
        j.set("seed", Json::integer(std::int64_t(seed)));
        j.set("details", details);
        j.set("witness", witness);
        return j.dump();
    }
};

} // namespace spreadlab
