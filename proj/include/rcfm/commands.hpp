#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rcfm/errors.hpp"
#include "rcfm/expr.hpp"
#include "rcfm/fredholm.hpp"
#include "rcfm/json_io.hpp"
#include "rcfm/matrix.hpp"
#include "rcfm/tj.hpp"

namespace rcfm {

/// Aligned grid of exact entries with 1-based row/column labels.
inline std::string render_window(const RcfMatrix& a, long rows, long cols) {
    if (rows < 1 || cols < 1) fail("OutOfDomain", "window dimensions must be >= 1");
    std::vector<std::vector<std::string>> cell(static_cast<std::size_t>(rows) + 1,
                                               std::vector<std::string>(static_cast<std::size_t>(cols) + 1));
    cell[0][0] = "";
    for (long j = 1; j <= cols; ++j) cell[0][static_cast<std::size_t>(j)] = std::to_string(j);
    for (long i = 1; i <= rows; ++i) {
        cell[static_cast<std::size_t>(i)][0] = std::to_string(i);
        for (long j = 1; j <= cols; ++j)
            cell[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                scalar_to_string(a.entry(i, j));
    }
    std::vector<std::size_t> width(static_cast<std::size_t>(cols) + 1, 0);
    for (const auto& row : cell)
        for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
    std::ostringstream out;
    for (const auto& row : cell) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ' ';
            out << std::string(width[j] - row[j].size(), ' ') << row[j];
        }
        out << '\n';
    }
    return out.str();
}

struct CommandOptions {
    std::string expr;        // --expr
    std::string rhs;         // --rhs (second expression for `equals`)
    std::string inverse;     // --inverse (witness partner)
    std::string embedding;   // first embedding name
    std::string embedding2;  // second embedding name
    std::string elem;        // --elem (TJ element)
    std::string elem2;       // --rhs-elem (second TJ element)
    std::string conj_u;      // --conj-u / --conj-uinv (explicit conjugator)
    std::string conj_uinv;
    std::string conj_a1;     // --conj-a1 / --conj-ratio (hyperdiagonal conjugator)
    std::string conj_ratio;
    long row = 1, col = 1;   // --row / --col
    long rows = 8, cols = 8; // --rows / --cols
    long unit_row = 1;       // --k / --l
    long unit_col = 1;
    long max_n = 24;         // --max-n
    long bandwidth = 4;      // --bandwidth
    long tail_degree = 2;    // --tail-degree
    long head_bound = 6;     // --head
};

struct Report {
    int exit_code = 0;
    std::string text;
    Json json;
};

namespace detail {

inline std::string require(const std::string& value, const std::string& flag) {
    if (value.empty()) fail("MissingArgument", "this command requires " + flag);
    return value;
}

inline std::string fsv_to_string(const FinSuppVector& v) {
    if (v.is_zero_vector()) return "0";
    std::string s;
    for (const auto& [i, c] : v.entries()) {
        if (!s.empty()) s += " + ";
        s += (c == 1 ? "" : scalar_to_string(c) + "*") + ("e_" + std::to_string(i));
    }
    return s;
}

inline std::string dim_to_string(const DimReport& r) {
    if (r.infinite()) return "infinite";
    return std::to_string(*r.value);
}

inline Json ok_report(const std::string& command, Json result) {
    return Json{{"command", command}, {"status", "ok"}, {"result", std::move(result)}};
}

inline Conjugator parse_conjugator(const CommandOptions& opt) {
    if (!opt.conj_a1.empty() || !opt.conj_ratio.empty()) {
        Scalar a1 = scalar_from_string(require(opt.conj_a1, "--conj-a1"));
        RationalFunction ratio = parse_ratfunc(require(opt.conj_ratio, "--conj-ratio"));
        return HyperDiagonal(a1, ratio);
    }
    RcfMatrix u = eval_expr_matrix(require(opt.conj_u, "--conj-u"));
    RcfMatrix uinv = eval_expr_matrix(require(opt.conj_uinv, "--conj-uinv"));
    return std::make_pair(std::move(u), std::move(uinv));
}

inline Report dispatch(const std::string& command, const CommandOptions& opt) {
    Report rep;
    if (command == "show") {
        RcfMatrix a = eval_expr_matrix(require(opt.expr, "--expr"));
        long rows = std::min(opt.rows, opt.max_n), cols = std::min(opt.cols, opt.max_n);
        Json entries = Json::array();
        for (long i = 1; i <= rows; ++i) {
            Json row = Json::array();
            for (long j = 1; j <= cols; ++j) row.push_back(scalar_to_string(a.entry(i, j)));
            entries.push_back(std::move(row));
        }
        rep.json = ok_report(command,
                             Json{{"matrix", jsonio::to_json(a)},
                                  {"window", Json{{"rows", rows}, {"cols", cols}, {"entries", entries}}}});
        rep.text = render_window(a, rows, cols);
    } else if (command == "entry") {
        RcfMatrix a = eval_expr_matrix(require(opt.expr, "--expr"));
        Scalar v = a.entry(opt.row, opt.col);
        rep.json = ok_report(command, Json{{"row", opt.row}, {"col", opt.col},
                                           {"value", scalar_to_string(v)}});
        rep.text = "A[" + std::to_string(opt.row) + "," + std::to_string(opt.col) +
                   "] = " + scalar_to_string(v);
    } else if (command == "isfinite") {
        RcfMatrix a = eval_expr_matrix(require(opt.expr, "--expr"));
        rep.json = ok_report(command, Json{{"finite", a.is_finite()}});
        rep.text = a.is_finite() ? "finite: true" : "finite: false";
    } else if (command == "equals") {
        RcfMatrix a = eval_expr_matrix(require(opt.expr, "--expr"));
        RcfMatrix b = eval_expr_matrix(require(opt.rhs, "--rhs"));
        bool eq = a == b;
        rep.json = ok_report(command, Json{{"equal", eq}});
        rep.text = eq ? "equal: true" : "equal: false";
    } else if (command == "kernel") {
        RcfMatrix a = eval_expr_matrix(require(opt.expr, "--expr"));
        KernelReport k = kernel_dim(a);
        Json basis = Json::array();
        for (const auto& v : k.basis) basis.push_back(jsonio::to_json(v));
        rep.json = ok_report(command, Json{{"dimension", jsonio::to_json(k.dim)},
                                           {"basis", std::move(basis)}});
        rep.text = "kernel dimension = " + dim_to_string(k.dim);
        for (std::size_t i = 0; i < k.basis.size(); ++i)
            rep.text += "\nbasis[" + std::to_string(i) + "] = " + fsv_to_string(k.basis[i]);
    } else if (command == "cokernel-witnessed") {
        RcfMatrix a = eval_expr_matrix(require(opt.expr, "--expr"));
        RcfMatrix a0 = eval_expr_matrix(require(opt.inverse, "--inverse"));
        DimReport c = cokernel_dim_witnessed(witness_verify(a, a0));
        rep.json = ok_report(command, Json{{"dimension", jsonio::to_json(c)}});
        rep.text = "cokernel dimension = " + dim_to_string(c);
    } else if (command == "index") {
        RcfMatrix a = eval_expr_matrix(require(opt.expr, "--expr"));
        RcfMatrix a0 = eval_expr_matrix(require(opt.inverse, "--inverse"));
        FredholmWitness w = witness_verify(a, a0);
        KernelReport k = kernel_dim(w.a);
        DimReport c = cokernel_dim_witnessed(w);
        if (k.dim.infinite() || c.infinite())
            fail("InternalInconsistency", "witnessed matrix with an infinite defect dimension");
        long idx = *k.dim.value - *c.value;
        rep.json = ok_report(command, Json{{"index", idx},
                                           {"kernel", jsonio::to_json(k.dim)},
                                           {"cokernel", jsonio::to_json(c)}});
        rep.text = "index = " + std::to_string(idx) + "\nkernel = " + dim_to_string(k.dim) +
                   "\ncokernel = " + dim_to_string(c);
    } else if (command == "decide-toeplitz") {
        RcfMatrix a = eval_expr_matrix(require(opt.expr, "--expr"));
        ToeplitzDecision d = toeplitz_fredholm_decide(a);
        std::string symbol = symbol_to_string(d.symbol);
        if (d.fredholm) {
            rep.json = ok_report(command, Json{{"outcome", "fredholm"},
                                               {"symbol", symbol},
                                               {"index", *d.index}});
            rep.text = "Fredholm index " + std::to_string(*d.index) + " symbol \"" + symbol + "\"";
        } else {
            rep.json = ok_report(command, Json{{"outcome", "not-fredholm-in-class"},
                                               {"symbol", symbol}});
            rep.text = "NotFredholmInClass symbol \"" + symbol + "\"";
        }
    } else if (command == "refute") {
        RcfMatrix a = eval_expr_matrix(require(opt.expr, "--expr"));
        RefutationOutcome out =
            banded_inverse_refute(a, opt.bandwidth, opt.tail_degree, opt.head_bound);
        if (const auto* cert = std::get_if<RefutationCertificate>(&out)) {
            rep.json = ok_report(command, Json{{"outcome", "refuted"},
                                               {"certificate", jsonio::to_json(*cert)}});
            rep.text = "refuted: no banded inverse with offsets in [-" +
                       std::to_string(cert->bandwidth) + "," + std::to_string(cert->bandwidth) +
                       "], tail degree <= " + std::to_string(cert->tail_degree) +
                       " (system rank " + std::to_string(cert->system_rank) + " < augmented rank " +
                       std::to_string(cert->augmented_rank) + ")";
        } else {
            const auto& w = std::get<FredholmWitness>(out);
            rep.json = ok_report(command, Json{{"outcome", "counterexample"},
                                               {"inverse", jsonio::to_json(w.a0)}});
            rep.text = "counterexample: found a banded inverse mod finite";
        }
    } else if (command == "tj-map") {
        Embedding e = Embedding::by_name(require(opt.embedding, "an embedding name"));
        TJElement t = parse_tj_element(require(opt.elem, "--elem"));
        RcfMatrix img = tj_embed(e, t);
        rep.json = ok_report(command, Json{{"embedding", e.name()},
                                           {"element", jsonio::to_json(t)},
                                           {"matrix", jsonio::to_json(img)}});
        rep.text = render_window(img, std::min(8L, opt.max_n), std::min(8L, opt.max_n));
    } else if (command == "tj-check") {
        Embedding e = Embedding::by_name(require(opt.embedding, "an embedding name"));
        TJElement u = parse_tj_element(require(opt.elem, "--elem"));
        TJElement v = parse_tj_element(require(opt.elem2, "--rhs-elem"));
        bool holds = embedding_hom_check(e, u, v);
        rep.json = ok_report(command, Json{{"embedding", e.name()}, {"holds", holds}});
        rep.text = holds ? "homomorphism check: true" : "homomorphism check: false";
    } else if (command == "tj-equiv") {
        Embedding e1 = Embedding::by_name(require(opt.embedding, "two embedding names"));
        Embedding e2 = Embedding::by_name(require(opt.embedding2, "two embedding names"));
        bool eq = equivalence_check(e1, e2, parse_conjugator(opt));
        rep.json = ok_report(command, Json{{"equivalent", eq}});
        rep.text = eq ? "equivalent: true" : "equivalent: false";
    } else if (command == "tj-distinguish") {
        Embedding e1 = Embedding::by_name(require(opt.embedding, "two embedding names"));
        Embedding e2 = Embedding::by_name(require(opt.embedding2, "two embedding names"));
        IndexObstruction ob = index_obstruction(e1, e2);
        rep.json = ok_report(command,
                             Json{{"outcome", ob.distinguishable ? "distinguishable" : "inconclusive"},
                                  {"index_x_1", ob.index1},
                                  {"index_x_2", ob.index2}});
        rep.text = (ob.distinguishable ? std::string("Distinguishable ") : std::string("Inconclusive ")) +
                   std::to_string(ob.index1) + " " + std::to_string(ob.index2);
    } else if (command == "ideal-unit") {
        RcfMatrix a = eval_expr_matrix(require(opt.expr, "--expr"));
        MatrixUnitFactorization f = matrix_unit_from_ideal(a, opt.unit_row, opt.unit_col);
        bool verified = (f.left * a * f.right).scaled(f.scale) ==
                        RcfMatrix::unit(opt.unit_row, opt.unit_col);
        rep.json = ok_report(command, Json{{"left", jsonio::to_json(f.left)},
                                           {"scale", scalar_to_string(f.scale)},
                                           {"right", jsonio::to_json(f.right)},
                                           {"verified", verified}});
        rep.text = "e_{" + std::to_string(opt.unit_row) + "," + std::to_string(opt.unit_col) +
                   "} = " + scalar_to_string(f.scale) + " * left * A * right (verified: " +
                   (verified ? "true" : "false") + ")";
    } else {
        fail("UnknownCommand", "no command named \"" + command + "\"");
    }
    return rep;
}

}  // namespace detail

/// Runs one CLI command; typed failures become error reports with exit code 1.
inline Report run_command(const std::string& command, const CommandOptions& opt) {
    try {
        return detail::dispatch(command, opt);
    } catch (const ParseError& e) {
        Report rep;
        rep.exit_code = 1;
        Json expected = Json::array();
        for (const auto& s : e.expected()) expected.push_back(s);
        rep.json = Json{{"command", command},
                        {"status", "error"},
                        {"error", Json{{"type", e.code()},
                                       {"message", e.what()},
                                       {"line", e.line()},
                                       {"col", e.column()},
                                       {"expected", std::move(expected)}}}};
        rep.text = std::string("error[") + e.code() + "]: " + e.what();
        return rep;
    } catch (const Error& e) {
        Report rep;
        rep.exit_code = 1;
        rep.json = Json{{"command", command},
                        {"status", "error"},
                        {"error", Json{{"type", e.code()}, {"message", e.what()}}}};
        rep.text = std::string("error[") + e.code() + "]: " + e.what();
        return rep;
    }
}

}  // namespace rcfm
