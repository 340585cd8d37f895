#include "arakelov/gram_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace arakelov {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> significant_lines(std::istream& in) {
    std::vector<Line> out;
    std::string text;
    int number = 0;
    while (std::getline(in, text)) {
        ++number;
        if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
        std::istringstream ss(text);
        Line line{number, {}};
        for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
        if (!line.tokens.empty()) out.push_back(std::move(line));
    }
    return out;
}

Rational parse_entry(const std::string& token, int line) {
    try {
        return parse_rational(token);
    } catch (const Error& e) {
        throw ParseError(line, "bad matrix entry '" + token + "'");
    }
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

ArakelovBundle parse_gram(std::istream& in) {
    const auto lines = significant_lines(in);
    if (lines.empty()) throw ParseError(1, "empty Gram file");
    std::size_t cursor = 0;

    const Line& head = lines[cursor++];
    std::string descriptor;
    for (const auto& t : head.tokens) descriptor += t;
    NumberField K = NumberField::rational();
    try {
        K = NumberField::parse(descriptor);
    } catch (const Error& e) {
        throw ParseError(head.number, e.what());
    }

    if (cursor >= lines.size()) throw ParseError(head.number + 1, "missing rank line");
    const Line& rank_line = lines[cursor++];
    int rank = 0;
    try {
        std::size_t used = 0;
        rank = std::stoi(rank_line.tokens.at(0), &used);
        if (used != rank_line.tokens[0].size() || rank_line.tokens.size() != 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw ParseError(rank_line.number, "rank must be a single positive integer");
    }
    if (rank < 1) throw ParseError(rank_line.number, "rank must be a single positive integer");

    const auto places = K.infinite_places();
    std::vector<Eigen::MatrixXcd> grams;
    std::optional<RationalMatrix> exact;
    for (const Place& v : places) {
        Eigen::MatrixXcd G(rank, rank);
        RationalMatrix Q(rank);
        for (int i = 0; i < rank; ++i) {
            if (cursor >= lines.size())
                throw ParseError(lines.back().number + 1,
                                 "expected row " + std::to_string(i + 1) + " of the " + v.label() + " Gram");
            const Line& row = lines[cursor++];
            if (static_cast<int>(row.tokens.size()) != rank)
                throw ParseError(row.number, "expected " + std::to_string(rank) + " entries, found " +
                                                 std::to_string(row.tokens.size()));
            for (int j = 0; j < rank; ++j) {
                const std::string& tok = row.tokens[j];
                const auto comma = tok.find(',');
                Rational re, im = 0;
                if (comma == std::string::npos) {
                    re = parse_entry(tok, row.number);
                } else {
                    if (v.kind != PlaceKind::complex)
                        throw ParseError(row.number, "complex entry '" + tok + "' at a real place");
                    re = parse_entry(tok.substr(0, comma), row.number);
                    im = parse_entry(tok.substr(comma + 1), row.number);
                }
                Q(i, j) = re;
                G(i, j) = {to_double(re), to_double(im)};
            }
        }
        if (K.is_rational()) exact = Q;
        grams.push_back(std::move(G));
    }
    if (cursor != lines.size()) throw ParseError(lines[cursor].number, "unexpected trailing content");

    try {
        if (K.is_rational()) return ArakelovBundle(K, rank, {grams[0].real()}, {}, exact);
        return make_bundle(K, grams);
    } catch (const InvalidMetric& e) {
        throw ParseError(head.number, e.what());
    }
}

ArakelovBundle parse_gram_string(const std::string& text) {
    std::istringstream in(text);
    return parse_gram(in);
}

ArakelovBundle read_gram_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open Gram file '" + path + "'");
    return parse_gram(in);
}

std::string format_gram(const ArakelovBundle& E) {
    std::ostringstream out;
    out << E.field().descriptor() << '\n' << E.rank() << '\n';
    if (E.exact_gram()) {
        const RationalMatrix& Q = *E.exact_gram();
        for (int i = 0; i < E.rank(); ++i)
            for (int j = 0; j < E.rank(); ++j) out << Q(i, j).str() << (j + 1 == E.rank() ? '\n' : ' ');
        return out.str();
    }
    for (const auto& G : E.real_grams())
        for (int i = 0; i < E.rank(); ++i)
            for (int j = 0; j < E.rank(); ++j) out << format_double(G(i, j)) << (j + 1 == E.rank() ? '\n' : ' ');
    for (const auto& G : E.complex_grams())
        for (int i = 0; i < E.rank(); ++i)
            for (int j = 0; j < E.rank(); ++j)
                out << format_double(G(i, j).real()) << ',' << format_double(G(i, j).imag())
                    << (j + 1 == E.rank() ? '\n' : ' ');
    return out.str();
}

}  // namespace arakelov
