#ifndef TRACETIME_TRACETIME_HPP
#define TRACETIME_TRACETIME_HPP

// Minimum parallel execution time of instruction traces over asynchronous systems.

#include "tracetime/error.hpp"
#include "tracetime/alphabet.hpp"
#include "tracetime/trace.hpp"
#include "tracetime/system.hpp"
#include "tracetime/explicit_system.hpp"
#include "tracetime/petri_net.hpp"
#include "tracetime/timed.hpp"
#include "tracetime/scheduler.hpp"
#include "tracetime/reach.hpp"

#endif
