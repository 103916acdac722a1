/**
 * DOM layer. All proof state lives on the service; this file only renders
 * the latest SessionState and forwards clicks. The OK listing panel shows
 * the service rendering verbatim, with no client-side re-derivation.
 */

import {
  ApiError,
  ArgsDoc,
  Client,
  RuleOption,
  SessionState,
  TreeDoc,
} from "./api.js";
import {
  FORMULA_PALETTE,
  FormulaDoc,
  FormulaNode,
  Node,
  Path,
  TERM_PALETTE,
  fillHole,
  formulaFromDoc,
  formulaToDoc,
  hole,
  holePaths,
  isComplete,
  nodeAt,
  renderNode,
  termToDoc,
  HOLE_GLYPH,
} from "./model.js";

type ArgBuilders = Map<string, { kind: string; node?: Node; text?: string }>;

interface GoalRow {
  path: number[];
  depth: number;
  goal: { formula: FormulaDoc; assumptions: FormulaDoc[] };
  rule: string | null;
}

function rows(tree: TreeDoc, depth = 0, path: number[] = []): GoalRow[] {
  const open = "open" in tree && tree.open === true;
  const row: GoalRow = {
    path,
    depth,
    goal: tree.goal,
    rule: open ? null : (tree as { rule: string }).rule,
  };
  const out = [row];
  if (!open) {
    (tree as { children: TreeDoc[] }).children.forEach((child, i) => {
      out.push(...rows(child, depth + 1, [...path, i]));
    });
  }
  return out;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class App {
  private client: Client;
  private root: HTMLElement;
  private sessionId: string | null = null;
  private state: SessionState | null = null;
  private goalBuilder: FormulaNode = hole();
  private selectedGoal: string | null = null; // JSON path of the goal being worked
  private ruleChoice: RuleOption | null = null;
  private argBuilders: ArgBuilders = new Map();
  private message = "";

  constructor(root: HTMLElement, client: Client = new Client()) {
    this.root = root;
    this.client = client;
  }

  async start() {
    this.render();
  }

  private async refresh() {
    if (this.sessionId) {
      this.state = await this.client.getSession(this.sessionId);
    }
    this.render();
  }

  private run(action: () => Promise<void>) {
    action()
      .then(() => {
        this.message = "";
        this.render();
      })
      .catch((err) => {
        this.message = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
        this.render();
      });
  }

  // --- builder widgets -------------------------------------------------

  private builderWidget(
    node: Node,
    onFill: (path: Path, ctor: string, detail?: { name?: string; arity?: number; index?: number }) => void,
  ): HTMLElement {
    const box = el("span", "builder");
    const paths = holePaths(node);
    const text = renderNode(node);
    const pieces = text.split(HOLE_GLYPH);
    pieces.forEach((piece, i) => {
      box.append(piece);
      if (i < pieces.length - 1) {
        const holeButton = el("button", "hole", HOLE_GLYPH);
        const target = paths[i];
        holeButton.addEventListener("click", () => {
          this.openPalette(holeButton, node, target, onFill);
        });
        box.append(holeButton);
      }
    });
    return box;
  }

  private openPalette(
    anchor: HTMLElement,
    root: Node,
    path: Path,
    onFill: (path: Path, ctor: string, detail?: { name?: string; arity?: number; index?: number }) => void,
  ) {
    document.querySelectorAll(".palette").forEach((p) => p.remove());
    const isTerm = nodeAt(root, path).kind === "term-hole";
    const palette = el("div", "palette");
    const options = isTerm ? TERM_PALETTE : FORMULA_PALETTE;
    for (const ctor of options) {
      const button = el("button", "palette-item", ctor);
      button.addEventListener("click", () => {
        palette.remove();
        if (ctor === "Pre" || ctor === "Fun") {
          const name = window.prompt(`${ctor} symbol name`, ctor === "Pre" ? "P" : "a") ?? "P";
          const arity = Number(window.prompt("arity (number of arguments)", "0") ?? "0");
          onFill(path, ctor, { name, arity: Number.isFinite(arity) ? arity : 0 });
        } else if (ctor === "Var") {
          const index = Number(window.prompt("de Bruijn index", "0") ?? "0");
          onFill(path, ctor, { index: Number.isFinite(index) ? index : 0 });
        } else {
          onFill(path, ctor);
        }
      });
      palette.append(button);
    }
    anchor.insertAdjacentElement("afterend", palette);
  }

  // --- screens ----------------------------------------------------------

  private render() {
    this.root.replaceChildren();
    const bar = el("div", "topbar");
    bar.append(el("span", "brand", "natded"));
    const load = el("button", undefined, "Load");
    load.addEventListener("click", () => this.run(() => this.showCorpus()));
    bar.append(load);
    if (this.state) {
      const undo = el("button", undefined, "Undo");
      undo.disabled = !this.state.can_undo;
      undo.addEventListener("click", () =>
        this.run(async () => {
          this.state = await this.client.undo(this.sessionId!);
        }),
      );
      const redo = el("button", undefined, "Redo");
      redo.disabled = !this.state.can_redo;
      redo.addEventListener("click", () =>
        this.run(async () => {
          this.state = await this.client.redo(this.sessionId!);
        }),
      );
      const fresh = el("button", undefined, "New goal");
      fresh.addEventListener("click", () => {
        this.sessionId = null;
        this.state = null;
        this.goalBuilder = hole();
        this.render();
      });
      bar.append(undo, redo, fresh);
    }
    this.root.append(bar);
    if (this.message) {
      this.root.append(el("div", "error", this.message));
    }
    if (!this.state) {
      this.renderGoalEditor();
    } else {
      this.renderSession(this.state);
    }
  }

  private renderGoalEditor() {
    const panel = el("div", "editor");
    panel.append(el("h2", undefined, "Goal formula"));
    panel.append(
      el("p", "hint", `Click the red ${HOLE_GLYPH} to choose a constructor.`),
    );
    panel.append(
      this.builderWidget(this.goalBuilder, (path, ctor, detail) => {
        this.goalBuilder = fillHole(this.goalBuilder, path, ctor, detail) as FormulaNode;
        this.render();
      }),
    );
    const startButton = el("button", "primary", "Start proof");
    startButton.disabled = !isComplete(this.goalBuilder);
    startButton.addEventListener("click", () =>
      this.run(async () => {
        const { session_id } = await this.client.createSession(
          formulaToDoc(this.goalBuilder),
        );
        this.sessionId = session_id;
        this.state = await this.client.getSession(session_id);
      }),
    );
    panel.append(el("div"), startButton);
    this.root.append(panel);
  }

  private async showCorpus() {
    const entries = await this.client.corpus();
    const dialog = el("div", "corpus");
    dialog.append(el("h2", undefined, "Load a goal"));
    for (const entry of entries) {
      const row = el("div", "corpus-row");
      const pick = el("button", undefined, entry.name);
      pick.addEventListener("click", () =>
        this.run(async () => {
          dialog.remove();
          const { session_id } = await this.client.createSession(entry.goal);
          this.sessionId = session_id;
          this.state = await this.client.getSession(session_id);
        }),
      );
      row.append(pick, el("span", "desc", ` ${entry.goal_text} — ${entry.description}`));
      dialog.append(row);
    }
    this.root.append(dialog);
  }

  private renderSession(state: SessionState) {
    const layout = el("div", "columns");
    const left = el("div", "tree-pane");
    left.append(el("h2", undefined, "Proof"));
    for (const row of rows(state.tree)) {
      left.append(this.renderRow(row, state));
    }
    if (state.open_goal_paths.length === 0) {
      const done = el("div", "done", "No open goals — proof complete.");
      const exportButton = el("button", "primary", "Check exported proof");
      exportButton.addEventListener("click", () =>
        this.run(async () => {
          const doc = await this.client.exportProof(this.sessionId!);
          const verdict = await this.client.checkProof(doc);
          this.message = verdict.accepted
            ? "kernel accepted the exported proof"
            : "kernel REJECTED the exported proof";
        }),
      );
      done.append(exportButton);
      left.append(done);
    }
    const right = el("div", "listing-pane");
    right.append(el("h2", undefined, "OK listing"));
    right.append(el("pre", "listing", this.displayedListing(state)));
    right.append(el("h2", undefined, "Rule tree"));
    right.append(el("pre", "listing", state.renderings.tree_text));
    layout.append(left, right);
    this.root.append(layout);
  }

  /** What the listing panel shows: the service string untouched. */
  displayedListing(state: SessionState): string {
    return state.renderings.ok_listing;
  }

  private renderRow(row: GoalRow, state: SessionState): HTMLElement {
    const line = el("div", "goal-row");
    line.style.marginLeft = `${row.depth * 1.5}em`;
    const formulaText = renderNode(formulaFromDoc(row.goal.formula));
    const assumptionsText = row.goal.assumptions
      .map((a) => renderNode(formulaFromDoc(a)))
      .join(", ");
    line.append(el("span", "goal-text", `OK ${formulaText} [${assumptionsText}]`));
    if (row.rule) {
      const marker = row.rule === "Assume" ? "Assume (auto)" : row.rule;
      line.append(el("span", "rule-label", `  ${marker}`));
      return line;
    }
    const key = JSON.stringify(row.path);
    const openButton = el("button", "open-goal", "open — choose rule");
    openButton.addEventListener("click", () =>
      this.run(async () => {
        this.selectedGoal = key;
        this.ruleChoice = null;
        this.argBuilders = new Map();
      }),
    );
    line.append(openButton);
    if (this.selectedGoal === key) {
      line.append(this.renderRuleMenu(row));
    }
    return line;
  }

  private renderRuleMenu(row: GoalRow): HTMLElement {
    const menu = el("div", "rule-menu");
    const select = el("select");
    select.append(el("option", undefined, "— rule —"));
    this.client.rules(row.goal.formula, row.goal.assumptions).then((options) => {
      for (const option of options) {
        const item = el("option", undefined, option.rule);
        item.value = JSON.stringify(option);
        select.append(item);
      }
    });
    select.addEventListener("change", () => {
      if (!select.value) return;
      this.ruleChoice = JSON.parse(select.value) as RuleOption;
      this.argBuilders = new Map(
        Object.entries(this.ruleChoice.args).map(([name, kind]) => [
          name,
          kind === "identifier"
            ? { kind, text: "" }
            : { kind, node: kind === "term" ? { kind: "term-hole" as const } : hole() },
        ]),
      );
      this.render();
    });
    menu.append(select);
    if (this.ruleChoice) {
      for (const [name, builder] of this.argBuilders) {
        const slot = el("div", "arg-slot");
        slot.append(el("span", "arg-name", `${name} := `));
        if (builder.kind === "identifier") {
          const input = el("input");
          input.value = builder.text ?? "";
          input.addEventListener("input", () => {
            builder.text = input.value;
            apply.disabled = !this.argsComplete();
          });
          slot.append(input);
        } else {
          slot.append(
            this.builderWidget(builder.node!, (path, ctor, detail) => {
              builder.node = fillHole(builder.node!, path, ctor, detail);
              this.render();
            }),
          );
        }
        menu.append(slot);
      }
      const apply = el("button", "primary", `Apply ${this.ruleChoice.rule}`);
      apply.disabled = !this.argsComplete();
      apply.addEventListener("click", () =>
        this.run(async () => {
          const args = this.collectArgs();
          this.state = await this.client.apply(
            this.sessionId!,
            JSON.parse(this.selectedGoal!) as number[],
            this.ruleChoice!.rule,
            args,
          );
          this.selectedGoal = null;
          this.ruleChoice = null;
        }),
      );
      menu.append(apply);
    }
    return menu;
  }

  private argsComplete(): boolean {
    for (const builder of this.argBuilders.values()) {
      if (builder.kind === "identifier") {
        if (!builder.text) return false;
      } else if (!builder.node || !isComplete(builder.node)) {
        return false;
      }
    }
    return true;
  }

  private collectArgs(): ArgsDoc {
    const args: ArgsDoc = {};
    for (const [name, builder] of this.argBuilders) {
      if (builder.kind === "identifier") {
        (args as Record<string, unknown>)[name] = builder.text;
      } else if (builder.kind === "term") {
        (args as Record<string, unknown>)[name] = termToDoc(builder.node as never);
      } else {
        (args as Record<string, unknown>)[name] = formulaToDoc(builder.node as never);
      }
    }
    return args;
  }
}
