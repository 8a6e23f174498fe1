#include "mvlab/prices_io.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>

namespace mvlab {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool valid_iso_date(const std::string& d) {
    if (d.size() != 10 || d[4] != '-' || d[7] != '-')
        return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(d[i])))
            return false;
    return true;
}

}  // namespace

std::vector<PriceRow> read_price_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw data_error("cannot open price file '" + path + "'");

    std::string line;
    long line_no = 0;
    if (!std::getline(in, line))
        throw data_error("price file '" + path + "' is empty");
    ++line_no;
    if (trim(line) != "date,close")
        throw data_error("price file '" + path + "': expected header 'date,close'", line_no);

    std::vector<PriceRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty())
            continue;
        const auto comma = t.find(',');
        if (comma == std::string::npos)
            throw data_error("price file row " + std::to_string(line_no) + ": missing comma",
                             line_no);
        PriceRow row;
        row.date = trim(t.substr(0, comma));
        const std::string close_text = trim(t.substr(comma + 1));
        if (!valid_iso_date(row.date))
            throw data_error("price file row " + std::to_string(line_no) +
                             ": date '" + row.date + "' is not ISO-8601", line_no);
        char* end = nullptr;
        row.close = std::strtod(close_text.c_str(), &end);
        if (end == close_text.c_str() || *end != '\0')
            throw data_error("price file row " + std::to_string(line_no) +
                             ": close '" + close_text + "' is not a number", line_no);
        if (!(row.close > 0.0))
            throw data_error("price file row " + std::to_string(line_no) +
                             ": non-positive close", line_no);
        if (!rows.empty() && row.date <= rows.back().date)
            throw data_error("price file row " + std::to_string(line_no) +
                             ": date '" + row.date + "' does not advance past '" +
                             rows.back().date + "'", line_no);
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2)
        throw data_error("price file '" + path + "': need at least two rows");
    return rows;
}

PricePath ingest_prices(const std::string& path, double risk_free) {
    const auto rows = read_price_file(path);
    std::vector<double> closes;
    closes.reserve(rows.size());
    for (const auto& row : rows)
        closes.push_back(row.close);

    TimeGrid grid;
    grid.steps = static_cast<int>(rows.size()) - 1;
    grid.horizon_years = grid.steps / 252.0;  // one trading day per row
    grid.burn_in_steps = 0;
    return discount_prices(closes, grid, risk_free);
}

}  // namespace mvlab
