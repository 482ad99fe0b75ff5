#pragma once

#include "moebius/errors.hpp"
#include "moebius/numeric.hpp"
#include "moebius/extscalar.hpp"
#include "moebius/triples.hpp"
#include "moebius/perms.hpp"
#include "moebius/space.hpp"
#include "moebius/report.hpp"
#include "moebius/scan.hpp"
#include "moebius/structure.hpp"
#include "moebius/conditions.hpp"
#include "moebius/sequences.hpp"
#include "moebius/fixtures.hpp"
#include "moebius/io.hpp"
