#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cpd/series.hpp"

namespace cpd {

// One OHLC bar at minute resolution, prices positive and ordered
// low <= min(open, close) <= max(open, close) <= high.
struct MinuteBar {
  std::chrono::sys_seconds timestamp;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;

  void validate() const;
};

struct DailyW {
  std::chrono::year_month_day date;
  double w = 0.0;
};

// Per-day bookkeeping: which days lacked the nominal 00:00/23:59 bars and
// fell back to the earliest/latest minute, and which were dropped outright.
struct DayQuality {
  std::chrono::year_month_day date;
  bool open_fallback = false;
  bool close_fallback = false;
};

struct WSeries {
  std::vector<DailyW> days;
  std::vector<DayQuality> flagged;
  std::size_t dropped_flat_days = 0;
};

using DateRange =
    std::pair<std::chrono::year_month_day, std::chrono::year_month_day>;

// Aggregates sorted minute bars into the daily W variable
//   w = (close - open) / (mean of minute highs - mean of minute lows).
// Open is the 00:00 bar's open (earliest minute as fallback), close the
// 23:59 bar's close (latest as fallback). Flat days (zero denominator) are
// dropped and counted, never imputed.
WSeries daily_w_series(std::span<const MinuteBar> bars,
                       const std::optional<DateRange>& range = std::nullopt);

// W values of one calendar year as a Series (sigma left for plug-in).
Series yearly_slice(const WSeries& series, int year);

// Headered CSV in the Kaggle per-minute layout: columns unix, date, symbol,
// open, high, low, close (+ ignored extras), recognized by name. Parse
// failures name the offending line.
std::vector<MinuteBar> read_ohlc_csv(std::istream& input);

// date,w output / input for downstream detection.
void write_w_csv(std::ostream& output, const WSeries& series);
std::vector<DailyW> read_w_csv(std::istream& input);

std::string to_iso_date(const std::chrono::year_month_day& date);

}  // namespace cpd
