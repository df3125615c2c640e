// Shared types: the application document format and the service payloads.

export const DIRECTIONS = [
    "onTheLeftOf",
    "onTheRightOf",
    "above",
    "below",
    "aboveLeft",
    "aboveRight",
    "belowLeft",
    "belowRight",
] as const;

export type Direction = (typeof DIRECTIONS)[number];

export type Scope = "first" | "last" | "all";

export type SuggestionMode = "tasks" | "functionalities" | "layout" | "complete";

export interface Frame {
    x: number;
    y: number;
    w: number;
    h: number;
}

export interface Cell {
    row: number;
    col: number;
    rowSpan: number;
    colSpan: number;
}

export interface Constraint {
    subject: string;
    relation: Direction;
    anchor: string;
}

export type LayoutSpec =
    | { type: "absolute"; positions: Record<string, Frame> }
    | { type: "table"; cells: Record<string, Cell> }
    | { type: "relative"; constraints: Constraint[] };

export interface ComponentDocument {
    id: string;
    kind: string;
    label: string;
    children?: ComponentDocument[];
}

export interface ScreenDocument {
    id: string;
    name: string;
    root: ComponentDocument;
    layouts: Record<string, LayoutSpec>;
}

export interface TaskDocument {
    id: string;
    name: string;
    parent?: string;
    functionalities: string[];
}

export interface FunctionalityDocument {
    id: string;
    name: string;
    signature: string;
}

export interface LinkDocument {
    ui: string;
    task?: string;
    functionality?: string;
}

export interface ApplicationDocument {
    id: string;
    name: string;
    screens: ScreenDocument[];
    tasks: TaskDocument[];
    functionalities: FunctionalityDocument[];
    links: LinkDocument[];
}

export interface Suggestion {
    question: string;
    candidates: string[];
    source: "task" | "functionality" | "layout";
}

export interface GridPosition {
    row: number;
    col: number;
}

export type Placement = Record<string, GridPosition>;
