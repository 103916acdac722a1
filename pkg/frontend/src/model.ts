/**
 * Formula and term builders with holes, plus conversion to the wire format.
 *
 * The editor grows a tree from a single hole; every hole offers the seven
 * formula constructors (or Var/Fun for term positions) and the tree is only
 * submittable once no hole remains. The hole glyph is the red ¤ in the UI.
 */

export const HOLE_GLYPH = "¤";

export type TermDoc =
  | { var: number }
  | { fun: [string, TermDoc[]] };

export type FormulaDoc =
  | { falsity: null }
  | { pre: [string, TermDoc[]] }
  | { imp: [FormulaDoc, FormulaDoc] }
  | { dis: [FormulaDoc, FormulaDoc] }
  | { con: [FormulaDoc, FormulaDoc] }
  | { exi: FormulaDoc }
  | { uni: FormulaDoc };

export type TermNode =
  | { kind: "term-hole" }
  | { kind: "var"; index: number }
  | { kind: "fun"; name: string; args: TermNode[] };

export type FormulaNode =
  | { kind: "hole" }
  | { kind: "falsity" }
  | { kind: "pre"; name: string; args: TermNode[] }
  | { kind: "imp"; left: FormulaNode; right: FormulaNode }
  | { kind: "dis"; left: FormulaNode; right: FormulaNode }
  | { kind: "con"; left: FormulaNode; right: FormulaNode }
  | { kind: "exi"; body: FormulaNode }
  | { kind: "uni"; body: FormulaNode };

export type Node = FormulaNode | TermNode;

/** Constructor choices offered at a formula hole, in palette order. */
export const FORMULA_PALETTE = [
  "Falsity",
  "Pre",
  "Imp",
  "Dis",
  "Con",
  "Exi",
  "Uni",
] as const;

/** Constructor choices offered at a term hole. */
export const TERM_PALETTE = ["Var", "Fun"] as const;

export function hole(): FormulaNode {
  return { kind: "hole" };
}

export function termHole(): TermNode {
  return { kind: "term-hole" };
}

export function isHole(node: Node): boolean {
  return node.kind === "hole" || node.kind === "term-hole";
}

function children(node: Node): Node[] {
  switch (node.kind) {
    case "hole":
    case "term-hole":
    case "falsity":
    case "var":
      return [];
    case "pre":
    case "fun":
      return node.args;
    case "imp":
    case "dis":
    case "con":
      return [node.left, node.right];
    case "exi":
    case "uni":
      return [node.body];
  }
}

function withChild(node: Node, index: number, child: Node): Node {
  switch (node.kind) {
    case "pre":
    case "fun": {
      const args = node.args.slice();
      args[index] = child as TermNode;
      return { ...node, args };
    }
    case "imp":
    case "dis":
    case "con":
      if (index === 0) return { ...node, left: child as FormulaNode };
      return { ...node, right: child as FormulaNode };
    case "exi":
    case "uni":
      return { ...node, body: child as FormulaNode };
    default:
      throw new Error(`node of kind ${node.kind} has no children`);
  }
}

export type Path = number[];

export function nodeAt(root: Node, path: Path): Node {
  let node = root;
  for (const index of path) {
    const kids = children(node);
    if (index < 0 || index >= kids.length) {
      throw new Error(`no child ${index} at ${JSON.stringify(path)}`);
    }
    node = kids[index];
  }
  return node;
}

export function replaceAt(root: Node, path: Path, replacement: Node): Node {
  if (path.length === 0) return replacement;
  const [head, ...rest] = path;
  const child = children(root)[head];
  return withChild(root, head, replaceAt(child, rest, replacement));
}

/** Paths of all holes, leftmost first. */
export function holePaths(root: Node, prefix: Path = []): Path[] {
  if (isHole(root)) return [prefix];
  const found: Path[] = [];
  children(root).forEach((child, i) => {
    found.push(...holePaths(child, [...prefix, i]));
  });
  return found;
}

export function isComplete(root: Node): boolean {
  return holePaths(root).length === 0;
}

/** Fill the hole at ``path`` with a fresh constructor skeleton. */
export function fillHole(
  root: Node,
  path: Path,
  constructor: string,
  detail?: { name?: string; arity?: number; index?: number },
): Node {
  const target = nodeAt(root, path);
  if (!isHole(target)) {
    throw new Error("can only fill a hole");
  }
  let skeleton: Node;
  switch (constructor) {
    case "Falsity":
      skeleton = { kind: "falsity" };
      break;
    case "Pre":
      skeleton = {
        kind: "pre",
        name: detail?.name ?? "P",
        args: Array.from({ length: detail?.arity ?? 0 }, termHole),
      };
      break;
    case "Imp":
      skeleton = { kind: "imp", left: hole(), right: hole() };
      break;
    case "Dis":
      skeleton = { kind: "dis", left: hole(), right: hole() };
      break;
    case "Con":
      skeleton = { kind: "con", left: hole(), right: hole() };
      break;
    case "Exi":
      skeleton = { kind: "exi", body: hole() };
      break;
    case "Uni":
      skeleton = { kind: "uni", body: hole() };
      break;
    case "Var":
      skeleton = { kind: "var", index: detail?.index ?? 0 };
      break;
    case "Fun":
      skeleton = {
        kind: "fun",
        name: detail?.name ?? "a",
        args: Array.from({ length: detail?.arity ?? 0 }, termHole),
      };
      break;
    default:
      throw new Error(`unknown constructor ${constructor}`);
  }
  if (target.kind === "term-hole" && !(skeleton.kind === "var" || skeleton.kind === "fun")) {
    throw new Error(`${constructor} is not a term constructor`);
  }
  if (target.kind === "hole" && (skeleton.kind === "var" || skeleton.kind === "fun")) {
    throw new Error(`${constructor} is not a formula constructor`);
  }
  return replaceAt(root, path, skeleton);
}

export function termToDoc(node: TermNode): TermDoc {
  switch (node.kind) {
    case "term-hole":
      throw new Error("term still has a hole");
    case "var":
      return { var: node.index };
    case "fun":
      return { fun: [node.name, node.args.map(termToDoc)] };
  }
}

export function formulaToDoc(node: FormulaNode): FormulaDoc {
  switch (node.kind) {
    case "hole":
      throw new Error("formula still has a hole");
    case "falsity":
      return { falsity: null };
    case "pre":
      return { pre: [node.name, node.args.map(termToDoc)] };
    case "imp":
      return { imp: [formulaToDoc(node.left), formulaToDoc(node.right)] };
    case "dis":
      return { dis: [formulaToDoc(node.left), formulaToDoc(node.right)] };
    case "con":
      return { con: [formulaToDoc(node.left), formulaToDoc(node.right)] };
    case "exi":
      return { exi: formulaToDoc(node.body) };
    case "uni":
      return { uni: formulaToDoc(node.body) };
  }
}

export function termFromDoc(doc: TermDoc): TermNode {
  if ("var" in doc) return { kind: "var", index: doc.var };
  return { kind: "fun", name: doc.fun[0], args: doc.fun[1].map(termFromDoc) };
}

export function formulaFromDoc(doc: FormulaDoc): FormulaNode {
  if ("falsity" in doc) return { kind: "falsity" };
  if ("pre" in doc) {
    return { kind: "pre", name: doc.pre[0], args: doc.pre[1].map(termFromDoc) };
  }
  if ("imp" in doc) {
    return { kind: "imp", left: formulaFromDoc(doc.imp[0]), right: formulaFromDoc(doc.imp[1]) };
  }
  if ("dis" in doc) {
    return { kind: "dis", left: formulaFromDoc(doc.dis[0]), right: formulaFromDoc(doc.dis[1]) };
  }
  if ("con" in doc) {
    return { kind: "con", left: formulaFromDoc(doc.con[0]), right: formulaFromDoc(doc.con[1]) };
  }
  if ("exi" in doc) return { kind: "exi", body: formulaFromDoc(doc.exi) };
  return { kind: "uni", body: formulaFromDoc(doc.uni) };
}

/** Display text; holes show the ¤ glyph, indices stay raw de Bruijn. */
export function renderNode(node: Node): string {
  switch (node.kind) {
    case "hole":
    case "term-hole":
      return HOLE_GLYPH;
    case "falsity":
      return "Falsity";
    case "var":
      return `Var ${node.index}`;
    case "fun":
      return `Fun "${node.name}" [${node.args.map(renderNode).join(", ")}]`;
    case "pre":
      return `Pre "${node.name}" [${node.args.map(renderNode).join(", ")}]`;
    case "imp":
      return `Imp ${group(node.left)} ${group(node.right)}`;
    case "dis":
      return `Dis ${group(node.left)} ${group(node.right)}`;
    case "con":
      return `Con ${group(node.left)} ${group(node.right)}`;
    case "exi":
      return `Exi ${group(node.body)}`;
    case "uni":
      return `Uni ${group(node.body)}`;
  }
}

function group(node: FormulaNode): string {
  if (node.kind === "falsity" || node.kind === "hole") return renderNode(node);
  return `(${renderNode(node)})`;
}
