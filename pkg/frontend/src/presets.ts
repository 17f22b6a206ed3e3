// Generated from the repository fixture files; tests assert byte equality.

export interface Preset {
  name: string;
  title: string;
  text: string;
}

export const PRESETS: Preset[] = [
  { name: "cand_intro", title: "Introduce a choice componentwise", text: "# A choice in the consequent is proved componentwise: (r & q) -> (r ?& q)\n1. (r&q)->q, rule a, no premise\n2. (r&q)->r, rule a, no premise\n3. (r&q)->(r?&q), rule a, 1 2\n" },
  { name: "cand_intro_unsound", title: "Unstable axioms (checker demo)", text: "# Looks like a componentwise choice introduction, but the two axioms are\n# not stable: p->q and p->r are not classical tautologies, so rule a\n# rejects lines 1 and 2.  Kept as a checker regression fixture.\n1. p->q, rule a, no premise\n2. p->r, rule a, no premise\n3. p->(r?&q), rule a, 1 2\n" },
  { name: "cand_merge", title: "Merge two copies of a choice", text: "# Two parallel copies of an environment choice collapse into one:\n# ((p ?& q) & (p ?& q)) -> (p ?& q)\n1. (p&p)->p, rule a, no premise\n2. (q&q)->q, rule a, no premise\n3. ((q?&p)&p)->p, rule b, 1\n4. ((p?&q)&(q?&p))->p, rule b, 3\n5. ((p?&q)&q)->q, rule b, 2\n6. ((p?&q)&(p?&q))->q, rule b, 5\n7. ((p?&q)&(p?&q))->(p?&q), rule a, 4 6\n" },
];
