#pragma once

#include "hqk/config.hpp"
#include "hqk/error.hpp"
#include "hqk/kljn.hpp"
#include "hqk/physics.hpp"
#include "hqk/protocol.hpp"
#include "hqk/rates.hpp"
#include "hqk/report.hpp"
#include "hqk/rng.hpp"
#include "hqk/session.hpp"
#include "hqk/stats.hpp"
#include "hqk/reference_rounds.hpp"
#include "hqk/trace.hpp"
