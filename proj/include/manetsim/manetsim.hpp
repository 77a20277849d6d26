#pragma once

#include "aodv.hpp"
#include "compare.hpp"
#include "dsr.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "metrics.hpp"
#include "node.hpp"
#include "packet.hpp"
#include "radio.hpp"
#include "random.hpp"
#include "router.hpp"
#include "scenario.hpp"
#include "sim_time.hpp"
#include "simulation.hpp"
#include "tora.hpp"
#include "traffic.hpp"
