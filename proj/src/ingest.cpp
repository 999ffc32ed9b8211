#include "cpd/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cpd {

namespace {

using std::chrono::sys_days;
using std::chrono::sys_seconds;
using std::chrono::year_month_day;

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

[[noreturn]] void fail_line(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("line " + std::to_string(line_no) + ": " + what);
}

double parse_double(const std::string& s, std::size_t line_no) {
  double value = 0.0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    fail_line(line_no, "bad numeric field '" + s + "'");
  }
  return value;
}

// "YYYY-MM-DD[( |T)HH:MM[:SS]]", UTC.
sys_seconds parse_datetime(const std::string& s, std::size_t line_no) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  const int got = std::sscanf(s.c_str(), "%d-%d-%d%*1[ T]%d:%d:%d", &y, &mo, &d, &h, &mi, &sec);
  if (got < 3) fail_line(line_no, "bad date field '" + s + "'");
  const year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(mo)},
                           std::chrono::day{unsigned(d)}};
  if (!ymd.ok()) fail_line(line_no, "bad calendar date '" + s + "'");
  return sys_days{ymd} + std::chrono::hours{h} + std::chrono::minutes{mi} +
         std::chrono::seconds{sec};
}

year_month_day date_of(const sys_seconds& ts) {
  return year_month_day{std::chrono::floor<std::chrono::days>(ts)};
}

int minute_of_day(const sys_seconds& ts) {
  const auto day_start = std::chrono::floor<std::chrono::days>(ts);
  return static_cast<int>(
      std::chrono::duration_cast<std::chrono::minutes>(ts - day_start).count());
}

}  // namespace

void MinuteBar::validate() const {
  const bool prices_positive = open > 0.0 && high > 0.0 && low > 0.0 && close > 0.0;
  const bool ordered = low <= std::min(open, close) && std::max(open, close) <= high;
  if (!prices_positive || !ordered ||
      !std::isfinite(open + high + low + close)) {
    throw std::invalid_argument("MinuteBar: inconsistent prices");
  }
}

WSeries daily_w_series(std::span<const MinuteBar> bars,
                       const std::optional<DateRange>& range) {
  if (bars.empty()) throw std::runtime_error("no data");
  for (std::size_t i = 1; i < bars.size(); ++i) {
    if (bars[i].timestamp < bars[i - 1].timestamp) {
      throw std::runtime_error("unsorted input");
    }
  }

  WSeries out;
  std::size_t i = 0;
  while (i < bars.size()) {
    const year_month_day date = date_of(bars[i].timestamp);
    std::size_t j = i;
    double high_sum = 0.0;
    double low_sum = 0.0;
    while (j < bars.size() && date_of(bars[j].timestamp) == date) {
      bars[j].validate();
      high_sum += bars[j].high;
      low_sum += bars[j].low;
      ++j;
    }
    const std::size_t count = j - i;
    const bool in_range =
        !range || (sys_days{range->first} <= sys_days{date} &&
                   sys_days{date} <= sys_days{range->second});
    if (in_range) {
      const MinuteBar& first = bars[i];
      const MinuteBar& last = bars[j - 1];
      const double denom = (high_sum - low_sum) / static_cast<double>(count);
      if (denom <= 0.0) {
        ++out.dropped_flat_days;
      } else {
        const double w = (last.close - first.open) / denom;
        out.days.push_back(DailyW{date, w});
        DayQuality quality{date, minute_of_day(first.timestamp) != 0,
                           minute_of_day(last.timestamp) != 23 * 60 + 59};
        if (quality.open_fallback || quality.close_fallback) {
          out.flagged.push_back(quality);
        }
      }
    }
    i = j;
  }
  if (out.days.empty() && out.dropped_flat_days == 0) {
    throw std::runtime_error("no data");
  }
  return out;
}

Series yearly_slice(const WSeries& series, int year) {
  std::vector<double> values;
  for (const DailyW& day : series.days) {
    if (static_cast<int>(day.date.year()) == year) values.push_back(day.w);
  }
  if (values.size() < 2) throw std::runtime_error("empty slice");
  return Series(std::move(values));
}

std::vector<MinuteBar> read_ohlc_csv(std::istream& input) {
  std::string line;
  std::size_t line_no = 0;

  // Header: columns located by name, unknown extras ignored.
  if (!std::getline(input, line)) throw std::runtime_error("no data");
  ++line_no;
  std::map<std::string, std::size_t> columns;
  {
    const auto names = split_csv_line(line);
    for (std::size_t c = 0; c < names.size(); ++c) columns[lower(names[c])] = c;
  }
  const auto column = [&](const char* name) -> std::optional<std::size_t> {
    const auto it = columns.find(name);
    if (it == columns.end()) return std::nullopt;
    return it->second;
  };
  const auto need = [&](const char* name) -> std::size_t {
    const auto c = column(name);
    if (!c) throw std::runtime_error(std::string("missing column '") + name + "'");
    return *c;
  };
  const auto unix_col = column("unix");
  const auto date_col = column("date");
  if (!unix_col && !date_col) throw std::runtime_error("missing column 'unix' or 'date'");
  const std::size_t open_col = need("open");
  const std::size_t high_col = need("high");
  const std::size_t low_col = need("low");
  const std::size_t close_col = need("close");

  std::vector<MinuteBar> bars;
  while (std::getline(input, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    const auto field = [&](std::size_t c) -> const std::string& {
      if (c >= fields.size()) fail_line(line_no, "too few fields");
      return fields[c];
    };
    MinuteBar bar;
    if (unix_col) {
      double raw = parse_double(field(*unix_col), line_no);
      if (raw > 1e12) raw /= 1000.0;  // feed switches to milliseconds mid-2020
      bar.timestamp = sys_seconds{std::chrono::seconds{static_cast<long long>(raw)}};
    } else {
      bar.timestamp = parse_datetime(field(*date_col), line_no);
    }
    bar.open = parse_double(field(open_col), line_no);
    bar.high = parse_double(field(high_col), line_no);
    bar.low = parse_double(field(low_col), line_no);
    bar.close = parse_double(field(close_col), line_no);
    try {
      bar.validate();
    } catch (const std::invalid_argument& e) {
      fail_line(line_no, e.what());
    }
    bars.push_back(bar);
  }
  if (bars.empty()) throw std::runtime_error("no data");
  return bars;
}

void write_w_csv(std::ostream& output, const WSeries& series) {
  output << "date,w\n";
  char buffer[64];
  for (const DailyW& day : series.days) {
    std::snprintf(buffer, sizeof(buffer), "%.9g", day.w);
    output << to_iso_date(day.date) << ',' << buffer << '\n';
  }
}

std::vector<DailyW> read_w_csv(std::istream& input) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<DailyW> days;
  while (std::getline(input, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (line_no == 1 && lower(t).find("date") == 0) continue;  // header
    const auto fields = split_csv_line(t);
    if (fields.size() != 2) fail_line(line_no, "expected date,w");
    const auto ts = parse_datetime(fields[0], line_no);
    days.push_back(DailyW{date_of(ts), parse_double(fields[1], line_no)});
  }
  if (days.empty()) throw std::runtime_error("no data");
  return days;
}

std::string to_iso_date(const year_month_day& date) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02u-%02u",
                static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()),
                static_cast<unsigned>(date.day()));
  return buffer;
}

}  // namespace cpd
