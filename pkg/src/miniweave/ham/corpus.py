r"""A desk-scale HAM literate program and the meaning files around it.

The listing is a reconstruction: eleven sections whose shape, overrides
and cross-references agree with every quoted fragment of the original,
with the remaining code filled in plausibly.  It is meant for weaving,
not compiling.
"""

from __future__ import annotations

from ..packer import LayoutConfig

PROGRAM = "ham"

# Packing parameters under which the corpus falls into five spreads.
HAM_LAYOUT = LayoutConfig(mini_columns=2, mini_baseline=1, page_capacity=36, section_gap=1, rule_allowance=1, width=80)

OVERRIDES_2 = (
    "@-deg@>\n"
    "@$deg {ham}2 =\\|u.\\|I@>\n"
    "@%@$u {GB\\_GRAPH}9 \\&{util}@>\n"
)

OVERRIDES_4 = (
    "@-taken@> @-vert@>\n"
    "@$taken {ham}4 =\\|v.\\|I@>\n"
    "@%@$v {GB\\_GRAPH}9 \\&{util}@>\n"
    " @$v {ham}2 \\&{register} \\&{Vertex} $*$@>\n"
)

OVERRIDES_6 = (
    "@-k@> @-t@> @-vert@> @-ark@>\n"
    "@$vert {ham}6 =\\|w.\\|V@>\n"
    "@$ark {ham}6 =\\|x.\\|A@>\n"
    "@%@$w {GB\\_GRAPH}9 \\&{util}@>\n"
    "  @$x {GB\\_GRAPH}9 \\&{util}@>\n"
)

_SECTIONS = [
    # 1
    r"""@*Introduction. This program finds every Hamiltonian circuit of a graph,
namely every cycle that passes through each vertex exactly once, without
regard to direction. The graph comes from a file in the format written by
the GraphBase saving routines, and the answer is a simple count.

@c
#include "gb_graph.h" /* the GraphBase data structures */
#include "gb_save.h" /* |restore_graph| */
""",
    # 2
    "@\n" + OVERRIDES_2 + r"""The degree of every vertex lives in utility field |u| of its |Vertex|
record. Each |Graph| |g| lists the |Arc| records leaving~|v| starting
at |v->arcs|, linked by |a->next|, with |a->tip| the far end.

@d deg u.I /* the number of untaken neighbors */

@c
main(argc,argv)
  int argc; /* the number of command-line arguments */
  char *argv[]; /* an array of strings */
{@+Graph *g;
  register Vertex *u,*v; /* vertices of current interest */
  register Vertex *t,*x,*y; /* ends and neighbors of the path */
  register Arc *a;
  long count=0; /* circuits found so far */
  @<Read the graph and make sure it is usable@>;
  @<Initialize the degrees@>;
  @<Enumerate all circuits@>;
  @<Print the total@>;
}
""",
    # 3
    r"""@ The graph file is named on the command line.

@<Read the graph...@>=
if (argc!=2 || !(g=restore_graph(argv[1]))) {
  fprintf(stderr,"Usage: %s graphfilename\n",argv[0]);
  exit(1);
}
""",
    # 4
    "@\n" + OVERRIDES_4 + r"""A vertex is |taken| while it lies on the current path.

@d taken v.I /* is this vertex on the path? */
@d not_taken(vert) ((vert)->taken==0)

@<Initialize the degrees@>=
for (v=g->vertices;v<g->vertices+g->n;v++) {@+register int d=0;
  for (a=v->arcs;a;a=a->next) d++;
  v->deg=d;@+v->taken=0;
}
""",
    # 5
    r"""@ The value of |count| is the number of distinct circuits.

@<Print the total@>=
printf("Altogether %ld Hamiltonian circuits.\n",count);
""",
    # 6
    "@\n" + OVERRIDES_6 + r"""The path starts at the first vertex~|x| and currently ends
at~|t|; |vert| links each path vertex to its predecessor and |ark| is
the next arc to try. No vertex |k| is special.

@d vert w.V /* the preceding vertex on the path */
@d ark x.A /* the next arc to explore */

@<Enumerate all circuits@>=
x=g->vertices;@+x->taken=1;
t=NULL;@+v=x;
@<Advance to |v|@>;
""",
    # 7
    r"""@ Moving to a new vertex lowers the degrees of its neighbors. A neighbor
left with degree one must come next.

@<Advance to |v|@>=
advance: v->taken=1;@+v->vert=t;@+t=v;
@<Update the degrees of |t|'s neighbors@>;
for (a=t->arcs;a;a=a->next) {
  y=a->tip;
  if (not_taken(y) && y->deg==1) {
    t->ark=NULL;@+v=y;@+goto advance;
  }
}
t->ark=t->arcs;
while (t) {
  @<Try the next arc from |t|@>;
  @<Remove |t| from the path@>;
}
""",
    # 8
    r"""@ If no untaken neighbors remain, the path may close into a circuit.

@<Update the degrees...@>=
{@+register int d=0;
  for (a=t->arcs;a;a=a->next) {
    v=a->tip;@+v->deg--;
    if (not_taken(v)) d++;
  }
  if (d==0) @<Record a circuit if |t| touches |x|@>;
}
""",
    # 9
    r"""@ All vertices are on the path now.

@<Record a circuit...@>=
for (a=t->arcs;a;a=a->next)
  if (a->tip==x) count++;
""",
    # 10
    r"""@ The |next| untaken neighbor is found by scanning, and we |goto advance| to
it; field |ark| remembers how far the arcs of~|t| have been examined.

@<Try the next arc from |t|@>=
while (t->ark) {
  if (not_taken(t->ark->tip)) {
    v=t->ark->tip;@+t->ark=t->ark->next;@+goto advance;
  }
  a=t->ark;@+t->ark=a->next;
}
""",
    # 11
    r"""@ When the arcs of |t| are exhausted we back up, restoring the degrees. The
search is over when the starting vertex |g->vertices| leaves the path.

@<Remove |t| from the path@>=
for (a=t->arcs;a;a=a->next) a->tip->deg++;
t->taken=0;@+t=t->vert;
""",
]

HAM_BUX = "@i gb_graph.hux\n@i gb_save.hux\n"

GB_GRAPH_HUX = r"""@$util {GB\_GRAPH}8 =\&{union}@>
@$V {GB\_GRAPH}8 \&{struct} \\{vertex\_struct} $*$@>
@$A {GB\_GRAPH}8 \&{struct} \\{arc\_struct} $*$@>
@$I {GB\_GRAPH}8 \&{long}@>
@$Vertex {GB\_GRAPH}9 =\&{struct}@>
@$arcs {GB\_GRAPH}9 \&{Arc} $*$@>
@$name {GB\_GRAPH}9 \&{char} $*$@>
@$Arc {GB\_GRAPH}10 =\&{struct}@>
@$tip {GB\_GRAPH}10 \&{Vertex} $*$@>
@$next {GB\_GRAPH}10 \&{Arc} $*$@>
@$Graph {GB\_GRAPH}20 =\&{struct}@>
@$vertices {GB\_GRAPH}20 \&{Vertex} $*$@>
@$n {GB\_GRAPH}20 \&{long}@>
"""

GB_SAVE_HUX = r"""@$restore_graph {GB\_SAVE}4 \&{Graph} $*(\,)$@>
@$save_graph {GB\_SAVE}4 \&{long} (\,)@>
"""

SYSTEM_BUX = r"""@$printf "<stdio.h>" \&{int} (\,)@>
@$fprintf "<stdio.h>" \&{int} (\,)@>
@$stderr "<stdio.h>" \&{FILE} $*$@>
@$FILE "<stdio.h>" \zip@>
@$NULL "<stdio.h>" \zip@>
@$exit "<stdlib.h>" \&{void} (\,)@>
"""


def build_ham_corpus() -> str:
    """The LW source text of HAM."""
    return "\n".join(_SECTIONS)


def ham_corpus_files() -> dict:
    """Every file of the HAM ecosystem, keyed by file name."""
    return {
        "ham.lw": build_ham_corpus(),
        "ham.bux": HAM_BUX,
        "gb_graph.hux": GB_GRAPH_HUX,
        "gb_save.hux": GB_SAVE_HUX,
        "system.bux": SYSTEM_BUX,
    }


def weave_ham(aux=None, sref_text=None, cfg=None, **kw):
    """Weave the corpus with its companion files; a convenience for tests and demos."""
    from ..pipeline import weave

    files = ham_corpus_files()
    return weave(
        files["ham.lw"],
        PROGRAM,
        cfg=cfg or HAM_LAYOUT,
        sref_text=sref_text,
        system_bux=files["system.bux"],
        aux=aux,
        bux=files["ham.bux"],
        resolver=files,
        names=("system.bux", "ham.aux", "ham.bux"),
        **kw,
    )
