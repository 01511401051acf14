#ifndef ELLIPSCHEME_DIAGRAM_HPP
#define ELLIPSCHEME_DIAGRAM_HPP

// The admissible (chi, h*) diagram as data, its JSON form, and ASCII / SVG
// drawings in the diamond layout (chi to the right, h* upwards).

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "classify.hpp"

namespace ellipscheme {

enum class PointMark { None, M, M2, Exceptional };

inline std::string_view to_string(PointMark m) {
    switch (m) {
    case PointMark::None: return "";
    case PointMark::M: return "M";
    case PointMark::M2: return "M-2";
    case PointMark::Exceptional: return "exceptional";
    }
    return "";
}

inline PointMark parse_mark(std::string_view s) {
    if (s.empty()) return PointMark::None;
    if (s == "M") return PointMark::M;
    if (s == "M-2") return PointMark::M2;
    if (s == "exceptional") return PointMark::Exceptional;
    throw Error(ErrorCode::Parse, "bad point mark '" + std::string(s) + "'");
}

struct DiagramEntry {
    DiagramPoint point;
    std::vector<TopType> types;
    PointMark mark = PointMark::None;

    friend bool operator==(const DiagramEntry&, const DiagramEntry&) = default;
};

struct Diagram {
    int k = 1;
    std::vector<DiagramEntry> entries;  // sorted by point
    std::vector<TopType> extremal;

    friend bool operator==(const Diagram&, const Diagram&) = default;
};

/// Points carrying an extremal type are marked: M-points (h* = 12k), points of
/// extremal (M-2)-types, and (0,8), which also carries the exceptional pair.
inline Diagram make_diagram(int k) {
    Diagram d;
    d.k = k;
    std::map<DiagramPoint, PointMark> marks;
    for (const auto& e : extremal_types_detailed(k)) {
        const auto b = e.type.betti();
        const DiagramPoint pt{b.chi, b.h_star};
        if (e.family == ExtremalFamily::M) marks[pt] = PointMark::M;
        if (e.family == ExtremalFamily::M2) marks[pt] = PointMark::M2;
        d.extremal.push_back(e.type);
    }
    marks[{0, 8}] = PointMark::Exceptional;
    for (const auto& pt : allowed_points(k)) {
        DiagramEntry entry{pt, {}, PointMark::None};
        for (const auto& t : point_to_types(pt, k)) entry.types.push_back(t);
        if (auto it = marks.find(pt); it != marks.end()) entry.mark = it->second;
        d.entries.push_back(std::move(entry));
    }
    return d;
}

// ---------------------------------------------------------------- JSON

inline nlohmann::json to_json(const RealScheme& s) {
    if (s.is_three_pseudo_lines()) return {{"kind", "three_pseudo_lines"}};
    return {{"kind", "ovals"}, {"a", s.a()}, {"b", s.b()}};
}

inline RealScheme scheme_from_json(const nlohmann::json& j) {
    try {
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "three_pseudo_lines") return RealScheme::three_pseudo_lines();
        if (kind == "ovals") return RealScheme::ovals(j.at("a").get<int>(), j.at("b").get<int>());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("bad scheme JSON: ") + e.what());
    }
    throw Error(ErrorCode::Parse, "bad scheme JSON: unknown kind");
}

inline nlohmann::json to_json(const TopType& t) { return t.to_string(); }

inline TopType type_from_json(const nlohmann::json& j) {
    if (!j.is_string()) throw Error(ErrorCode::Parse, "topological type must be a JSON string");
    return TopType::parse(j.get<std::string>());
}

inline nlohmann::json to_json(const Diagram& d) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& e : d.entries) {
        nlohmann::json types = nlohmann::json::array();
        for (const auto& t : e.types) types.push_back(to_json(t));
        points.push_back({{"chi", e.point.chi}, {"h_star", e.point.h_star}, {"types", types}, {"mark", to_string(e.mark)}});
    }
    nlohmann::json ext = nlohmann::json::array();
    for (const auto& t : d.extremal) ext.push_back(to_json(t));
    return {{"k", d.k}, {"points", points}, {"extremal", ext}};
}

inline Diagram diagram_from_json(const nlohmann::json& j) {
    try {
        Diagram d;
        d.k = j.at("k").get<int>();
        for (const auto& p : j.at("points")) {
            DiagramEntry e;
            e.point = {p.at("chi").get<int>(), p.at("h_star").get<int>()};
            for (const auto& t : p.at("types")) e.types.push_back(type_from_json(t));
            e.mark = parse_mark(p.value("mark", std::string()));
            d.entries.push_back(std::move(e));
        }
        for (const auto& t : j.at("extremal")) d.extremal.push_back(type_from_json(t));
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("bad diagram JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------- drawings

inline char mark_glyph(PointMark m) {
    switch (m) {
    case PointMark::None: return 'o';
    case PointMark::M: return 'M';
    case PointMark::M2: return 'm';
    case PointMark::Exceptional: return '@';
    }
    return 'o';
}

/// One row per even h*, one column per even chi. Legend and the type of every
/// point follow the picture.
inline std::string render_ascii(const Diagram& d) {
    const int k = d.k;
    const int chi_min = 2 - 10 * k, chi_max = 10 * k - 2;
    std::map<DiagramPoint, PointMark> at;
    for (const auto& e : d.entries) at[e.point] = e.mark;
    std::ostringstream out;
    out << "admissible (chi, h*) for k = " << k << "\n";
    for (int h = 12 * k; h >= 4; h -= 2) {
        std::string row;
        for (int chi = chi_min; chi <= chi_max; chi += 2) {
            auto it = at.find({chi, h});
            row += it == at.end() ? ' ' : mark_glyph(it->second);
        }
        while (!row.empty() && row.back() == ' ') row.pop_back();
        std::string label = std::to_string(h);
        out << std::string(4 - std::min<std::size_t>(4, label.size()), ' ') << label << " |" << row << "\n";
    }
    out << "     +" << std::string((chi_max - chi_min) / 2 + 1, '-') << "\n";
    out << "      chi from " << chi_min << " to " << chi_max << "; x=0 at column " << (0 - chi_min) / 2 + 1 << "\n";
    out << "legend: M M-point, m extremal (M-2)-point, @ (0,8), o other admissible point\n\n";
    out << "extremal types:";
    for (const auto& t : d.extremal) out << " " << t.to_string();
    out << "\n\npoints:\n";
    for (const auto& e : d.entries) {
        out << "  " << e.point << " ";
        for (std::size_t i = 0; i < e.types.size(); ++i) out << (i ? ", " : "") << e.types[i].to_string();
        if (e.mark != PointMark::None) out << "  [" << to_string(e.mark) << "]";
        out << "\n";
    }
    return out.str();
}

inline std::string render_svg(const Diagram& d) {
    const int k = d.k;
    const double cell = 12.0, pad = 40.0;
    const int cols = 10 * k - 1, rows = 6 * k - 1;
    const double w = cols * cell + 2 * pad, h = rows * cell + 2 * pad;
    auto X = [&](int chi) { return pad + ((chi - (2 - 10 * k)) / 2 + 0.5) * cell; };
    auto Y = [&](int hs) { return pad + ((12 * k - hs) / 2 + 0.5) * cell; };
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
        << " " << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << pad << "\" y=\"" << pad / 2 << "\" font-size=\"12\">admissible (chi, h*) for k = " << k
        << "</text>\n";
    out << "<line x1=\"" << X(0) << "\" y1=\"" << pad << "\" x2=\"" << X(0) << "\" y2=\"" << h - pad
        << "\" stroke=\"#cccccc\"/>\n";
    for (const auto& e : d.entries) {
        const double cx = X(e.point.chi), cy = Y(e.point.h_star);
        std::string title = "(" + std::to_string(e.point.chi) + "," + std::to_string(e.point.h_star) + ")";
        for (const auto& t : e.types) title += " " + t.to_string();
        out << "<g><title>" << title << "</title>";
        switch (e.mark) {
        case PointMark::M:
            out << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"5\" fill=\"black\"/>";
            break;
        case PointMark::M2:
            out << "<rect x=\"" << cx - 4 << "\" y=\"" << cy - 4 << "\" width=\"8\" height=\"8\" fill=\"#1f4fbf\"/>";
            break;
        case PointMark::Exceptional:
            out << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"5\" fill=\"none\" stroke=\"#c00000\" stroke-width=\"2\"/>"
                << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"2\" fill=\"#c00000\"/>";
            break;
        case PointMark::None:
            out << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"2.5\" fill=\"#777777\"/>";
            break;
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace ellipscheme

#endif  // ELLIPSCHEME_DIAGRAM_HPP
