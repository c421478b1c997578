#ifndef LERPA_SESSION_CSV_H_
#define LERPA_SESSION_CSV_H_

#include <iosfwd>
#include <string>

#include "lerpa/arena.h"

namespace lerpa {

// One row per (hand, seat):
// hand_index,seat,agent_id,dealer,stage1,stage1_forced,stage1_explored,
// tricks_won,delta,cumulative,void
// stage1 is K or F; flags are 0/1.
void write_session_csv(const SessionLog& log, std::ostream& out);
std::string session_csv(const SessionLog& log);

// Quotes a field when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

// Fixed-precision decimal with '.' separator, independent of locale.
std::string format_number(double v, int precision = 6);

}  // namespace lerpa

#endif  // LERPA_SESSION_CSV_H_
