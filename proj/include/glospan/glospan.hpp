#pragma once

#include "glospan/error.hpp"
#include "glospan/group.hpp"
#include "glospan/presets.hpp"
#include "glospan/groupoid.hpp"
#include "glospan/rational.hpp"
#include "glospan/algebra.hpp"
#include "glospan/marks.hpp"
#include "glospan/span.hpp"
#include "glospan/transfer.hpp"
#include "glospan/orb_functor.hpp"
#include "glospan/span_diagram.hpp"
#include "glospan/linear.hpp"
#include "glospan/indexed.hpp"
#include "glospan/json_io.hpp"
