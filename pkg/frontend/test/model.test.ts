import { describe, expect, it } from "vitest";

import {
  FORMULA_PALETTE,
  HOLE_GLYPH,
  TERM_PALETTE,
  fillHole,
  formulaFromDoc,
  formulaToDoc,
  hole,
  holePaths,
  isComplete,
  renderNode,
  termHole,
  type FormulaNode,
} from "../src/model.js";

describe("palette", () => {
  it("offers the seven formula constructors", () => {
    expect([...FORMULA_PALETTE]).toEqual([
      "Falsity",
      "Pre",
      "Imp",
      "Dis",
      "Con",
      "Exi",
      "Uni",
    ]);
  });

  it("offers Var and Fun at term holes", () => {
    expect([...TERM_PALETTE]).toEqual(["Var", "Fun"]);
  });
});

describe("hole filling", () => {
  it("starts from a single hole", () => {
    expect(holePaths(hole())).toEqual([[]]);
    expect(isComplete(hole())).toBe(false);
  });

  it("builds the running example goal step by step", () => {
    // Imp (Con (Pre "P" []) (Imp (Pre "P" []) (Pre "Q" []))) (Pre "Q" [])
    let node: FormulaNode = hole();
    node = fillHole(node, [], "Imp") as FormulaNode;
    expect(isComplete(node)).toBe(false);
    node = fillHole(node, [0], "Con") as FormulaNode;
    node = fillHole(node, [0, 0], "Pre", { name: "P", arity: 0 }) as FormulaNode;
    node = fillHole(node, [0, 1], "Imp") as FormulaNode;
    node = fillHole(node, [0, 1, 0], "Pre", { name: "P", arity: 0 }) as FormulaNode;
    expect(isComplete(node)).toBe(false); // two holes remain
    node = fillHole(node, [0, 1, 1], "Pre", { name: "Q", arity: 0 }) as FormulaNode;
    node = fillHole(node, [1], "Pre", { name: "Q", arity: 0 }) as FormulaNode;
    expect(isComplete(node)).toBe(true);
    expect(renderNode(node)).toBe(
      'Imp (Con (Pre "P" []) (Imp (Pre "P" []) (Pre "Q" []))) (Pre "Q" [])',
    );
    expect(formulaToDoc(node)).toEqual({
      imp: [
        {
          con: [
            { pre: ["P", []] },
            { imp: [{ pre: ["P", []] }, { pre: ["Q", []] }] },
          ],
        },
        { pre: ["Q", []] },
      ],
    });
  });

  it("creates term holes for predicate arguments", () => {
    let node: FormulaNode = hole();
    node = fillHole(node, [], "Pre", { name: "R", arity: 2 }) as FormulaNode;
    expect(holePaths(node)).toEqual([[0], [1]]);
    node = fillHole(node, [0], "Var", { index: 0 }) as FormulaNode;
    node = fillHole(node, [1], "Fun", { name: "f", arity: 1 }) as FormulaNode;
    expect(holePaths(node)).toEqual([[1, 0]]);
    node = fillHole(node, [1, 0], "Var", { index: 1 }) as FormulaNode;
    expect(renderNode(node)).toBe('Pre "R" [Var 0, Fun "f" [Var 1]]');
  });

  it("rejects term constructors at formula holes and vice versa", () => {
    expect(() => fillHole(hole(), [], "Var", { index: 0 })).toThrow();
    expect(() => fillHole(termHole(), [], "Imp")).toThrow();
  });

  it("refuses to submit with a hole left", () => {
    const partial = fillHole(hole(), [], "Exi") as FormulaNode;
    expect(isComplete(partial)).toBe(false);
    expect(() => formulaToDoc(partial)).toThrow(/hole/);
  });
});

describe("rendering", () => {
  it("shows the hole glyph", () => {
    const partial = fillHole(hole(), [], "Dis") as FormulaNode;
    expect(renderNode(partial)).toBe(`Dis ${HOLE_GLYPH} ${HOLE_GLYPH}`);
  });

  it("keeps de Bruijn indices raw", () => {
    const node = formulaFromDoc({ uni: { pre: ["P", [{ var: 0 }]] } });
    expect(renderNode(node)).toBe('Uni (Pre "P" [Var 0])');
  });

  it("round-trips docs", () => {
    const doc = {
      imp: [{ falsity: null }, { exi: { pre: ["P", [{ var: 0 }]] } }],
    } as const;
    expect(formulaToDoc(formulaFromDoc(doc as never))).toEqual(doc);
  });
});
