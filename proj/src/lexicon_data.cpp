// Embedded copies of the data/ lexicon files. Generated from those files;
// the lexicons unit test asserts they stay byte-identical.

#include "pajama/lexicons.hpp"

namespace pajama::lexicons {

static const char* const k_stopwords_txt = R"LEX(# English stopword list used by tf-idf, information density, and the
# cohesion tagger. Versioned: changing it changes judge scores.
a
about
above
after
again
against
all
am
an
and
any
are
as
at
be
because
been
before
being
below
between
both
but
by
can
could
did
do
does
doing
down
during
each
few
for
from
further
had
has
have
having
he
her
here
hers
herself
him
himself
his
how
i
if
in
into
is
it
its
itself
just
me
more
most
my
myself
no
nor
not
now
of
off
on
once
only
or
other
our
ours
ourselves
out
over
own
same
she
should
so
some
such
than
that
the
their
theirs
them
themselves
then
there
these
they
this
those
through
to
too
under
until
up
very
was
we
were
what
when
where
which
while
who
whom
why
will
with
you
your
yours
yourself
yourselves
)LEX";

static const char* const k_transition_markers_txt = R"LEX(# Transition markers counted by structure.transition_density
# (word-boundary, case-insensitive; multi-word entries allowed).
however
therefore
moreover
furthermore
consequently
nevertheless
nonetheless
meanwhile
additionally
similarly
conversely
likewise
accordingly
subsequently
ultimately
finally
thus
hence
instead
specifically
notably
indeed
in addition
in contrast
in conclusion
in summary
in other words
in fact
for example
for instance
as a result
on the other hand
at the same time
by contrast
after all
)LEX";

static const char* const k_sentiment_positive_txt = R"LEX(# Positive polarity cues for bias.sentiment_neutrality.
good
great
excellent
amazing
wonderful
fantastic
love
loved
best
happy
positive
brilliant
superb
delightful
impressive
perfect
awesome
beautiful
enjoy
enjoyable
helpful
effective
efficient
reliable
robust
success
successful
benefit
beneficial
outstanding
remarkable
favorable
elegant
insightful
accurate
valuable
useful
superior
pleasant
exceptional
)LEX";

static const char* const k_sentiment_negative_txt = R"LEX(# Negative polarity cues for bias.sentiment_neutrality.
bad
terrible
awful
horrible
worst
hate
hated
poor
negative
wrong
failure
fail
failed
broken
confusing
unclear
unreliable
weak
useless
harmful
disappointing
mediocre
flawed
buggy
inaccurate
misleading
dangerous
ugly
messy
inconsistent
problematic
inferior
defective
annoying
frustrating
painful
worthless
dreadful
lousy
subpar
)LEX";

static const char* const k_pronouns_txt = R"LEX(# Closed pronoun list for the cohesion tagger.
i
you
he
she
it
we
they
me
him
her
us
them
mine
yours
his
hers
its
ours
theirs
myself
yourself
himself
herself
itself
ourselves
yourselves
themselves
this
that
these
those
who
whom
whose
which
what
someone
anyone
everyone
nobody
something
anything
everything
nothing
one
)LEX";

static const char* const k_function_verbs_txt = R"LEX(# Function words and common verb forms excluded from the cohesion tagger's
# noun approximation (nouns = tokens that are neither stopwords nor listed
# here; pronouns come from pronouns.txt).
say
says
said
get
gets
got
gotten
make
makes
made
making
go
goes
went
gone
going
know
knows
knew
known
think
thinks
thought
take
takes
took
taken
see
sees
saw
seen
come
comes
came
want
wants
wanted
look
looks
looked
use
uses
used
find
finds
found
give
gives
gave
given
tell
tells
told
work
works
worked
call
calls
called
try
tries
tried
ask
asks
asked
need
needs
needed
feel
feels
felt
become
becomes
became
leave
leaves
left
put
puts
mean
means
meant
keep
keeps
kept
let
lets
begin
begins
began
begun
seem
seems
seemed
help
helps
helped
show
shows
showed
shown
hear
hears
heard
run
runs
ran
move
moves
moved
live
lives
lived
believe
believes
believed
bring
brings
brought
happen
happens
happened
write
writes
wrote
written
sit
sits
sat
stand
stands
stood
lose
loses
lost
pay
pays
paid
meet
meets
met
include
includes
included
continue
continues
continued
set
sets
learn
learns
learned
change
changes
changed
lead
leads
led
understand
understands
understood
watch
watches
watched
follow
follows
followed
stop
stops
stopped
create
creates
created
speak
speaks
spoke
spoken
read
reads
allow
allows
allowed
add
adds
added
spend
spends
spent
grow
grows
grew
grown
open
opens
opened
walk
walks
walked
win
wins
won
offer
offers
offered
remember
remembers
remembered
consider
considers
considered
appear
appears
appeared
buy
buys
bought
wait
waits
waited
serve
serves
served
send
sends
sent
expect
expects
expected
build
builds
built
stay
stays
stayed
fall
falls
fell
fallen
reach
reaches
reached
remain
remains
remained
suggest
suggests
suggested
require
requires
required
report
reports
reported
decide
decides
decided
return
returns
returned
explain
explains
explained
hope
hopes
hoped
develop
develops
developed
carry
carries
carried
break
breaks
broke
receive
receives
received
agree
agrees
agreed
produce
produces
produced
eat
eats
ate
eaten
cover
covers
covered
catch
catches
caught
draw
draws
drew
drawn
sleep
sleeps
slept
purr
purrs
purred
also
really
well
much
many
still
even
often
always
never
perhaps
maybe
quite
rather
almost
already
yet
soon
together
away
ever
far
)LEX";

static const char* const k_stance_patterns_tsv = R"LEX(# Stance-strength patterns for bias.stance_strength.
# Columns: regex pattern (matched on lowercased text) <TAB> weight <TAB> label
\b(absolutely|definitely|certainly|undoubtedly|unquestionably)\b	1.0	strong
\b(always|never|must|everyone|nobody|no one)\b	0.9	absolute
\b(clearly|obviously|plainly|surely)\b	0.7	confident
\b(probably|likely|generally|typically|usually)\b	0.4	moderate
\b(perhaps|maybe|possibly|somewhat|arguably)\b	0.2	hedged
)LEX";

const std::vector<EmbeddedFile>& embedded_files() {
    static const std::vector<EmbeddedFile> files = {
        {"stopwords.txt", k_stopwords_txt},
        {"transition_markers.txt", k_transition_markers_txt},
        {"sentiment_positive.txt", k_sentiment_positive_txt},
        {"sentiment_negative.txt", k_sentiment_negative_txt},
        {"pronouns.txt", k_pronouns_txt},
        {"function_verbs.txt", k_function_verbs_txt},
        {"stance_patterns.tsv", k_stance_patterns_tsv},
    };
    return files;
}

} // namespace pajama::lexicons
