#pragma once

#include <string>
#include <vector>

#include "mvlab/market.hpp"

namespace mvlab {

// One trading-day observation from a raw price file.
struct PriceRow {
    std::string date;  // ISO-8601 calendar day
    double close = 0.0;
};

// Parse a comma-separated file with header `date,close`. Rows must carry
// strictly increasing ISO dates and positive closes; violations are reported
// with the 1-based file line. Only rows present count as trading days.
std::vector<PriceRow> read_price_file(const std::string& path);

// Read a price file and deflate it at the given rate, one 1/252-year step per
// row, time measured from the first row.
PricePath ingest_prices(const std::string& path, double risk_free);

}  // namespace mvlab
