"""Tests for the SmartTodo application."""
