// Wire types, mirroring the session service's JSON documents.

export interface Diagnostic {
  line: number;
  severity: "error" | "warning";
  code: string;
  message: string;
  path?: string;
}

export interface CheckResult {
  valid: boolean;
  mode: string;
  lines: number;
  diagnostics: Diagnostic[];
}

export interface TreeNode {
  kind: string;
  path: string;
  text: string;
  env_choosable: boolean;
  machine_choosable: boolean;
  children: TreeNode[];
}

export interface RunEntry {
  role: "machine" | "environment";
  move: string;
}

export interface Outcome {
  machine_wins_everywhere: boolean;
  winner_now: string | null;
  under: string;
  forfeited: boolean;
}

export interface StrategyNode {
  line: number;
  formula: string;
  rule: "a" | "b";
}

export interface StrategyEdge {
  from: number;
  to: number;
  role: "machine" | "environment";
  path: string;
  component: number;
}

export interface Strategy {
  nodes: StrategyNode[];
  edges: StrategyEdge[];
}

export interface TruthRow {
  assignment: Record<string, boolean>;
  value: boolean;
}

export interface SessionState {
  id: string;
  status: "awaiting_environment" | "quiescent" | "finished";
  line: number;
  formula: string;
  tree: TreeNode;
  legal_moves: string[];
  run: RunEntry[];
  outcome: Outcome;
  interpretation: Record<string, boolean> | null;
  mode: string;
  elementarization: string;
  atoms: string[];
  truth_table: TruthRow[] | null;
  strategy: Strategy;
}

export interface SessionResponse {
  id: string;
  state: SessionState;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details?: unknown;
}
