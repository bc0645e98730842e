#pragma once

#include <charconv>
#include <sstream>
#include <string>
#include <vector>

#include "facloc/core.hpp"

namespace facloc {

namespace detail {

struct TokenReader {
    std::vector<std::string> toks;
    std::size_t pos = 0;

    explicit TokenReader(const std::string& text) {
        std::istringstream in(text);
        std::string t;
        while (in >> t) toks.push_back(std::move(t));
    }
    bool done() const { return pos >= toks.size(); }
    double number(const char* what) {
        if (done()) throw ParseError(std::string("missing ") + what, pos);
        const std::string& s = toks[pos];
        double v;
        auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc() || r.ptr != s.data() + s.size())
            throw ParseError(std::string("expected number for ") + what + ", got '" + s + "'", pos);
        ++pos;
        return v;
    }
    long long integer(const char* what) {
        double v = number(what);
        long long iv = static_cast<long long>(v);
        if (static_cast<double>(iv) != v) throw ParseError(std::string(what) + " must be an integer", pos - 1);
        return iv;
    }
};

inline std::string num_text(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

}  // namespace detail

// OR-Library uncapacitated format: "n_f n_c", then per facility a capacity
// token (ignored) and an opening cost, then per city its demand followed by
// n_f allocation costs. Allocation costs embed the demand, so the stored
// connection cost is the allocation cost divided by the demand when the
// demand is positive, and the raw value otherwise. Trailing junk is an
// error.
inline Instance parse_orlib(const std::string& text) {
    detail::TokenReader rd(text);
    Instance inst;
    long long nf = rd.integer("facility count");
    long long nc = rd.integer("city count");
    if (nf < 0 || nc < 0 || nf > 100000 || nc > 1000000)
        throw ParseError("implausible dimensions", 0);
    inst.n_f = static_cast<int>(nf);
    inst.n_c = static_cast<int>(nc);
    inst.open_cost.resize(inst.n_f);
    for (int i = 0; i < inst.n_f; ++i) {
        rd.number("capacity");  // ignored
        double f = rd.number("opening cost");
        if (f < 0) throw ParseError("negative opening cost", rd.pos - 1);
        inst.open_cost[i] = f;
    }
    inst.demand.resize(inst.n_c);
    inst.conn.resize(static_cast<std::size_t>(inst.n_f) * inst.n_c);
    for (int j = 0; j < inst.n_c; ++j) {
        double dj = rd.number("demand");
        if (dj < 0) throw ParseError("negative demand", rd.pos - 1);
        inst.demand[j] = dj;
        for (int i = 0; i < inst.n_f; ++i) {
            double alloc = rd.number("allocation cost");
            if (alloc < 0) throw ParseError("negative allocation cost", rd.pos - 1);
            inst.c(i, j) = dj > 0 ? alloc / dj : alloc;
        }
    }
    if (!rd.done()) throw ParseError("trailing tokens after instance data", rd.pos);
    return inst;
}

// Native line-oriented format, versioned "FACLOC v1". Doubles are written
// with shortest round-trip precision, so serialize/parse is lossless.
inline std::string to_native(const Instance& inst) {
    std::string s = "FACLOC v1\n";
    s += "nf " + std::to_string(inst.n_f) + "\n";
    s += "nc " + std::to_string(inst.n_c) + "\n";
    s += std::string("metric ") + (inst.metric ? "1" : "0") + "\n";
    if (inst.n_f > 0) {
        s += "f";
        for (double v : inst.open_cost) s += " " + detail::num_text(v);
        s += "\n";
    }
    if (inst.n_c > 0)
        for (int i = 0; i < inst.n_f; ++i) {
            s += "c";
            for (int j = 0; j < inst.n_c; ++j) s += " " + detail::num_text(inst.c(i, j));
            s += "\n";
        }
    if (inst.has_demands()) {
        s += "d";
        for (double v : inst.demand) s += " " + detail::num_text(v);
        s += "\n";
    }
    if (inst.has_penalties()) {
        s += "p";
        for (double v : inst.penalty) s += " " + detail::num_text(v);
        s += "\n";
    }
    s += "end\n";
    return s;
}

inline Instance from_native(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };
    if (!next_line() || line != "FACLOC v1") throw ParseError("bad or missing FACLOC version tag", line_no);

    Instance inst;
    int c_rows = 0;
    bool saw_end = false;
    auto parse_values = [&](const std::string& body, std::vector<double>& out_vals, int expect) {
        out_vals.clear();
        std::istringstream ls(body);
        std::string t;
        while (ls >> t) {
            double v;
            auto r = std::from_chars(t.data(), t.data() + t.size(), v);
            if (r.ec != std::errc() || r.ptr != t.data() + t.size())
                throw ParseError("bad numeric value '" + t + "'", line_no);
            out_vals.push_back(v);
        }
        if (expect >= 0 && static_cast<int>(out_vals.size()) != expect)
            throw ParseError("wrong value count (got " + std::to_string(out_vals.size()) +
                                 ", want " + std::to_string(expect) + ")",
                             line_no);
    };

    auto parse_int = [&](const std::string& body) {
        int v = 0;
        auto b = body.data();
        auto r = std::from_chars(b, b + body.size(), v);
        if (r.ec != std::errc() || r.ptr != b + body.size() || v < 0)
            throw ParseError("bad dimension '" + body + "'", line_no);
        return v;
    };

    std::vector<double> vals;
    while (next_line()) {
        if (line == "end") { saw_end = true; break; }
        auto sp = line.find(' ');
        std::string key = line.substr(0, sp);
        std::string body = sp == std::string::npos ? "" : line.substr(sp + 1);
        if (key == "nf") inst.n_f = parse_int(body);
        else if (key == "nc") {
            inst.n_c = parse_int(body);
            inst.conn.assign(static_cast<std::size_t>(inst.n_f) * inst.n_c, 0.0);
        } else if (key == "metric") inst.metric = body == "1";
        else if (key == "f") {
            parse_values(body, vals, inst.n_f);
            inst.open_cost = vals;
        } else if (key == "c") {
            if (c_rows >= inst.n_f) throw ParseError("too many c rows", line_no);
            parse_values(body, vals, inst.n_c);
            for (int j = 0; j < inst.n_c; ++j) inst.c(c_rows, j) = vals[j];
            ++c_rows;
        } else if (key == "d") {
            parse_values(body, vals, inst.n_c);
            inst.demand = vals;
        } else if (key == "p") {
            parse_values(body, vals, inst.n_c);
            inst.penalty = vals;
        } else throw ParseError("unknown section '" + key + "'", line_no);
    }
    if (!saw_end) throw ParseError("missing end marker", line_no);
    if (inst.n_f > 0 && static_cast<int>(inst.open_cost.size()) != inst.n_f)
        throw ParseError("missing f section", line_no);
    if (inst.n_c > 0 && c_rows != inst.n_f)
        throw ParseError("expected " + std::to_string(inst.n_f) + " c rows, got " + std::to_string(c_rows), line_no);
    inst.validate();
    return inst;
}

}  // namespace facloc
