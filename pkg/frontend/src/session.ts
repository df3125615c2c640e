// The action layer between the panels and the service. Holds the view
// state, enforces a single in-flight mutation, records every action in
// script grammar, and re-reads server state after each round trip so the
// rendered selection can never drift from the workspace.

import { ApiClient, ApiError } from "./api.js";
import { SessionRecorder } from "./recorder.js";
import {
    DIRECTIONS,
    type ApplicationDocument,
    type Direction,
    type Placement,
    type Scope,
    type Suggestion,
    type SuggestionMode,
} from "./types.js";

export interface ViewState {
    workspaceId: string;
    sources: ApplicationDocument[];
    selection: string[];
    directions: Set<Direction>;
    scope: Scope;
    helpMode: SuggestionMode;
    suggestions: Suggestion[];
    composed: ApplicationDocument | null;
    busy: boolean;
    notice: string;
}

type Listener = (state: ViewState) => void;

function canonicalDirections(directions: Iterable<Direction>): Direction[] {
    const toggled = new Set(directions);
    return DIRECTIONS.filter((direction) => toggled.has(direction));
}

export class StudioSession {
    readonly state: ViewState;
    private readonly listeners: Listener[] = [];

    constructor(
        readonly api: ApiClient,
        readonly recorder: SessionRecorder = new SessionRecorder(),
    ) {
        this.state = {
            workspaceId: "",
            sources: [],
            selection: [],
            directions: new Set(["onTheRightOf"]),
            scope: "last",
            helpMode: "complete",
            suggestions: [],
            composed: null,
            busy: false,
            notice: "",
        };
    }

    onChange(listener: Listener): void {
        this.listeners.push(listener);
    }

    private notify(): void {
        for (const listener of this.listeners) listener(this.state);
    }

    async init(): Promise<void> {
        this.state.workspaceId = await this.api.createWorkspace();
        this.notify();
    }

    /** Server-authoritative refresh: selection and composed app re-read. */
    async refresh(): Promise<void> {
        this.state.selection = await this.api.selection(this.state.workspaceId);
        try {
            const text = await this.api.exportText(this.state.workspaceId);
            this.state.composed = JSON.parse(text) as ApplicationDocument;
        } catch (error) {
            if (error instanceof ApiError && error.code === "precondition") {
                this.state.composed = null;
            } else {
                throw error;
            }
        }
        this.notify();
    }

    private async mutate<T>(action: () => Promise<T>): Promise<T> {
        if (this.state.busy) throw new Error("another action is in flight");
        this.state.busy = true;
        this.state.notice = "";
        this.notify();
        try {
            const value = await action();
            await this.refresh();
            return value;
        } catch (error) {
            if (error instanceof ApiError) this.state.notice = error.message;
            throw error;
        } finally {
            this.state.busy = false;
            this.notify();
        }
    }

    async loadDocument(document: ApplicationDocument): Promise<void> {
        await this.mutate(async () => {
            const appId = await this.api.loadApplication(this.state.workspaceId, document);
            this.recorder.record("load", { app: appId });
            this.state.sources.push(document);
        });
    }

    async select(component: string): Promise<void> {
        await this.mutate(async () => {
            await this.api.select(this.state.workspaceId, component);
            this.recorder.record("select", { component });
        });
    }

    async deselect(component: string): Promise<void> {
        await this.mutate(async () => {
            await this.api.deselect(this.state.workspaceId, component);
            this.recorder.record("deselect", { component });
        });
    }

    toggleDirection(direction: Direction): void {
        if (this.state.directions.has(direction)) {
            this.state.directions.delete(direction);
        } else {
            this.state.directions.add(direction);
        }
        this.notify();
    }

    setScope(scope: Scope): void {
        this.state.scope = scope;
        this.notify();
    }

    /** Extend along the toggled directions; the request carries exactly the
     * panel's toggle and scope state. */
    async extendLayout(): Promise<void> {
        const directions = canonicalDirections(this.state.directions);
        const scope = this.state.scope;
        await this.mutate(async () => {
            await this.api.extendLayout(this.state.workspaceId, directions, scope);
            this.recorder.record("extendLayout", {
                directions: directions.join(","),
                scope,
            });
        });
    }

    async extendParent(): Promise<void> {
        await this.mutate(async () => {
            await this.api.extend(this.state.workspaceId, "parent");
            this.recorder.record("extendParent");
        });
    }

    async extendTask(): Promise<void> {
        await this.mutate(async () => {
            await this.api.extend(this.state.workspaceId, "task");
            this.recorder.record("extendTask");
        });
    }

    async extendFunctionality(): Promise<void> {
        await this.mutate(async () => {
            await this.api.extend(this.state.workspaceId, "functionality");
            this.recorder.record("extendFunctionality");
        });
    }

    setHelpMode(mode: SuggestionMode): void {
        this.state.helpMode = mode;
        this.notify();
    }

    /** Preview questions; a read, so nothing is recorded. */
    async loadSuggestions(): Promise<Suggestion[]> {
        if (this.state.selection.length === 0) {
            this.state.suggestions = [];
            this.notify();
            return [];
        }
        this.state.suggestions = await this.api.suggestions(
            this.state.workspaceId,
            this.state.helpMode,
        );
        this.notify();
        return this.state.suggestions;
    }

    /** Accepting a suggestion selects each candidate in order. */
    async acceptSuggestion(suggestion: Suggestion): Promise<void> {
        for (const candidate of suggestion.candidates) {
            await this.select(candidate);
        }
    }

    async extract(target: string, name?: string): Promise<string> {
        return this.mutate(async () => {
            const screen = await this.api.extract(this.state.workspaceId, target, name);
            const args: Record<string, string> = { target };
            if (name !== undefined) args.name = name;
            this.recorder.record("extract", args);
            return screen;
        });
    }

    async place(
        screen: string,
        subject: string,
        relation: Direction,
        anchor: string,
    ): Promise<Placement> {
        return this.mutate(async () => {
            const placement = await this.api.place(
                this.state.workspaceId,
                screen,
                subject,
                relation,
                anchor,
            );
            this.recorder.record("place", { screen, subject, relation, anchor });
            return placement;
        });
    }

    async exportDocument(): Promise<string> {
        return this.mutate(async () => {
            const text = await this.api.exportText(this.state.workspaceId);
            this.recorder.record("export");
            return text;
        });
    }
}
