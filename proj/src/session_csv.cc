#include "lerpa/session_csv.h"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace lerpa {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_number(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  std::string s(buf);
  if (s == "-0" || s.find_first_not_of("-0.") == std::string::npos) {
    s.erase(0, s.find_first_not_of('-'));  // no negative zero
  }
  return s;
}

void write_session_csv(const SessionLog& log, std::ostream& out) {
  out << "hand_index,seat,agent_id,dealer,stage1,stage1_forced,"
         "stage1_explored,tricks_won,delta,cumulative,void\n";
  for (std::size_t i = 0; i < log.hands.size(); ++i) {
    const HandRecord& h = log.hands[i];
    for (int s = 0; s < kNumSeats; ++s) {
      const KnockRecord& k = h.knocks[s];
      out << h.hand_index << ',' << s << ',' << csv_field(log.agent_ids[s])
          << ',' << (h.dealer == s ? 1 : 0) << ',' << (k.knocked ? 'K' : 'F')
          << ',' << (k.forced ? 1 : 0) << ',' << (k.exploratory ? 1 : 0) << ','
          << h.tricks_won[s] << ',' << h.settlement.deltas[s] << ','
          << log.cumulative[i][s] << ',' << (h.void_hand() ? 1 : 0) << '\n';
    }
  }
}

std::string session_csv(const SessionLog& log) {
  std::ostringstream out;
  write_session_csv(log, out);
  return out.str();
}

}  // namespace lerpa
