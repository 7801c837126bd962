#include "mpair/render.hpp"

#include <algorithm>
#include <sstream>

namespace mpair {

namespace {

bool is_c_pair_entry(const OrderedTriple& t, std::size_t row, std::size_t col) {
    return t.in_c(row) && col == row + 1;
}

} // namespace

std::string render_ascii(const MDifferential& d) {
    const auto& t = d.triple();
    std::size_t width = 2;
    for (std::size_t i = 0; i < t.size(); ++i) width = std::max(width, t.at(i).id.size());

    std::ostringstream out;
    out << "deg  " << std::string(width, ' ') << " B | A\\B\n";
    for (std::size_t i = t.size(); i-- > 0;) {
        const auto& e = t.at(i);
        std::ostringstream deg;
        deg << e.degree;
        std::string line = deg.str();
        line.insert(line.begin(), 5 > line.size() ? 5 - line.size() : 0, ' ');
        out << line << "  ";
        const std::string pad(width - e.id.size(), ' ');
        if (e.side == Side::boundary)
            out << pad << e.id << (e.trivial ? "!" : " ") << "|\n";
        else
            out << std::string(width, ' ') << "  | " << e.id << "\n";
    }
    bool any = false;
    for (std::size_t c = 0; c < t.size(); ++c)
        for (std::size_t r = 0; r < t.size(); ++r) {
            const auto& v = d.entry(r, c);
            if (v.is_zero()) continue;
            if (!any) {
                out << "segments:\n";
                any = true;
            }
            out << "  " << t.at(c).id << (is_c_pair_entry(t, r, c) ? " == " : " -- ")
                << t.at(r).id;
            if (!v.is_one()) out << "  [" << v.str() << "]";
            out << "\n";
        }
    return out.str();
}

std::string render_svg(const MDifferential& d) {
    const auto& t = d.triple();
    const std::size_t n = t.size();
    const int row_h = 40, margin = 30, width = 420;
    const int height = margin * 2 + row_h * static_cast<int>(n ? n - 1 : 0);
    const int axis_x = width / 2, bx = axis_x - 60, ix = axis_x + 60;

    auto y_of = [&](std::size_t i) {
        return height - margin - row_h * static_cast<int>(i);
    };
    auto x_of = [&](std::size_t i) { return t.in_b(i) ? bx : ix; };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 " << width
        << " " << height << "\">\n";
    out << "  <line x1=\"" << axis_x << "\" y1=\"0\" x2=\"" << axis_x << "\" y2=\"" << height
        << "\" stroke=\"black\" stroke-dasharray=\"4 4\"/>\n";

    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) {
            const auto& v = d.entry(r, c);
            if (v.is_zero()) continue;
            const int x1 = x_of(c), y1 = y_of(c), x2 = x_of(r), y2 = y_of(r);
            if (is_c_pair_entry(t, r, c)) {
                out << "  <line x1=\"" << x1 - 2 << "\" y1=\"" << y1 << "\" x2=\"" << x2 - 2
                    << "\" y2=\"" << y2 << "\" stroke=\"black\"/>\n";
                out << "  <line x1=\"" << x1 + 2 << "\" y1=\"" << y1 << "\" x2=\"" << x2 + 2
                    << "\" y2=\"" << y2 << "\" stroke=\"black\"/>\n";
            } else {
                out << "  <line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\""
                    << y2 << "\" stroke=\"black\"/>\n";
            }
            if (!v.is_one())
                out << "  <text x=\"" << (x1 + x2) / 2 + 6 << "\" y=\"" << (y1 + y2) / 2
                    << "\" font-size=\"11\">" << v.str() << "</text>\n";
        }

    for (std::size_t i = 0; i < n; ++i) {
        out << "  <circle cx=\"" << x_of(i) << "\" cy=\"" << y_of(i)
            << "\" r=\"8\" fill=\"white\" stroke=\"black\"/>\n";
        const int label_x = t.in_b(i) ? x_of(i) - 50 : x_of(i) + 14;
        out << "  <text x=\"" << label_x << "\" y=\"" << y_of(i) + 4 << "\" font-size=\"12\">"
            << t.at(i).id << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace mpair
